"""Exception hierarchy shared by all modules."""


class BlockforgeError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class InvalidParameters(BlockforgeError, ValueError):
    exit_code = 1


class BudgetExceeded(BlockforgeError):
    exit_code = 2


class ConsistencyError(BlockforgeError):
    """A brute-force result disagrees with a closed formula."""

    exit_code = 3
