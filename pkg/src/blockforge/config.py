from __future__ import annotations

import os

from .errors import BudgetExceeded, InvalidParameters

DEFAULT_BUDGET = 3**10
BUDGET_ENV = "BLOCKFORGE_BUDGET"


def enumeration_budget(override: int | None = None) -> int:
    """Largest group order we are willing to enumerate element by element."""
    if override is not None:
        return int(override)
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InvalidParameters(f"{BUDGET_ENV}={raw!r} is not an integer") from None
    if value <= 0:
        raise InvalidParameters(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def check_budget(size: int, budget: int | None, what: str) -> None:
    limit = enumeration_budget(budget)
    if size > limit:
        raise BudgetExceeded(f"{what}: {size} elements exceeds enumeration budget {limit}")
