"""Bounds, exact values and the conjecture checklist for a block (p, m, n, l, e)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable

from . import formulas
from .errors import InvalidParameters
from .fusion import BlockParams
from .lattice import forbidden_deficits


@dataclass(frozen=True)
class IntRange:
    """Integers lo..hi inclusive, minus ``excluded``."""

    lo: int
    hi: int
    excluded: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: int) -> "IntRange":
        return cls(value, value)

    @property
    def is_exact(self) -> bool:
        return len(self.values()) == 1

    @property
    def value(self) -> int:
        vals = self.values()
        if len(vals) != 1:
            raise ValueError(f"{self} is not a single value")
        return vals[0]

    def values(self) -> list[int]:
        return [v for v in range(self.lo, self.hi + 1) if v not in self.excluded]

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi and v not in self.excluded

    def within(self, other: "IntRange") -> bool:
        return all(v in other for v in self.values())

    def intersect(self, other: "IntRange") -> "IntRange":
        return IntRange(
            max(self.lo, other.lo), min(self.hi, other.hi), self.excluded | other.excluded
        )

    def __str__(self) -> str:
        if self.lo == self.hi:
            return str(self.lo)
        core = f"[{self.lo}, {self.hi}]"
        if self.excluded:
            core += " \\ {" + ", ".join(map(str, sorted(self.excluded))) + "}"
        return core


@dataclass(frozen=True)
class InvariantBounds:
    k: IntRange
    k0: IntRange
    k1: IntRange
    l: IntRange
    k_minus_l: int | None
    height_vanishing_above: int
    weighted_sum_bound: int
    source: str = "formula"


def _floor(x) -> int:
    return math.floor(x)


def _k_i_caps(p: int, weighted: int, cutoff: int) -> list[int]:
    """Crude per-height caps k_i <= W / p^(2i), i = 1..cutoff."""
    return [weighted // p ** (2 * i) for i in range(1, cutoff + 1)]


def bounds_general(block: BlockParams) -> InvariantBounds:
    p, m, n, l, e = block.as_tuple()
    k_lo = formulas.as_int(formulas.k_lower(p, m, n, l, e), "k(B) lower bound")
    k_hi = _floor(formulas.k_upper(p, m, n, l, e))
    k0_hi = formulas.as_int(formulas.k0_upper(p, m, n, l, e), "k_0(B) upper bound")
    weighted = formulas.as_int(formulas.weighted_height_sum_upper(p, m, n, l, e), "weighted sum")
    cutoff = formulas.height_cutoff(m, n, l)
    caps = _k_i_caps(p, weighted, cutoff)
    k0_lo = max(1, k_lo - sum(caps))
    k1_hi = caps[0] if caps else 0
    k1_lo = max(0, k_lo - k0_hi) if cutoff == 1 else 0
    # k - l is at least the nontrivial subsection contribution k_lo - e
    l_hi = k_hi - (k_lo - e)
    return InvariantBounds(
        k=IntRange(k_lo, k_hi),
        k0=IntRange(k0_lo, k0_hi),
        k1=IntRange(k1_lo, k1_hi),
        l=IntRange(e, l_hi),
        k_minus_l=None,
        height_vanishing_above=cutoff,
        weighted_sum_bound=weighted,
    )


def _require_n1(block: BlockParams) -> None:
    p, m, n, l, _ = block.as_tuple()
    if n != 1 or m < 2:
        raise InvalidParameters(f"needs n = 1 and m >= 2, got (m, n) = ({m}, {n})")


def bounds_M(block: BlockParams) -> InvariantBounds:
    """Refinement for D = M_{p^(m+1)}: heights at most 1, exact k - l."""
    _require_n1(block)
    p, m, n, l, e = block.as_tuple()
    g = bounds_general(block)
    kml = formulas.as_int(formulas.k_minus_l_cyclic_maximal(p, m, e), "k(B) - l(B)")
    k1_hi = formulas.as_int(formulas.k1_upper_cyclic_maximal(p, m, e), "k_1 upper")
    k0_lo = formulas.as_int(formulas.k0_lower_cyclic_maximal(p, m, e), "k_0 lower")
    k0 = IntRange(max(g.k0.lo, k0_lo), g.k0.hi)
    k1 = IntRange(max(0, g.k.lo - k0.hi), min(g.k1.hi, k1_hi))
    k = IntRange(g.k.lo, min(g.k.hi, k0.hi + k1.hi))
    l_range = IntRange(max(e, k.lo - kml), k.hi - kml)
    if p == 3 and e == 2:
        # for p = 3 the height-zero count is known exactly
        k0 = IntRange.exact((3**m + 9) // 2)
    return InvariantBounds(k, k0, k1, l_range, kml, 1, g.weighted_sum_bound)


def bounds_extraspecial(block: BlockParams, refine: bool = True) -> InvariantBounds:
    """D = p^(1+2)_-, i.e. (m, n, l) = (2, 1, 1).

    Without ``refine`` only the six interval statements are returned; with it,
    the e = p - 1 sharpening (and the p = 3 height-zero count) is applied.
    """
    p, m, n, l, e = block.as_tuple()
    if (m, n, l) != (2, 1, 1):
        raise InvalidParameters(f"extraspecial bounds need (m, n, l) = (2, 1, 1), got {(m, n, l)}")
    q = (p - 1) // e
    k = IntRange((p * p - 1) // e + e * p, (p * p - 1) // e + e * p + e - 1)
    k0 = IntRange((q + e) * p - e + 1, (q + e) * p)
    k1 = IntRange(q, q + e - 1)
    l_range = IntRange(e, 2 * e - 1)
    kml = (p * p - 1) // e + (p - 1) * e
    if refine and e == p - 1 and e > 1:
        k = IntRange(k.lo, min(k.hi, p * p + p - 2))
        l_range = IntRange(l_range.lo, min(l_range.hi, 2 * e - 2))
        cap = min(p * p, p * p - k0.lo)
        banned = {p * p - r for r in forbidden_deficits(p, cap)}
        k0 = IntRange(k0.lo, k0.hi, frozenset(v for v in banned if k0.lo <= v <= k0.hi))
    if refine and p == 3 and e == 2:
        k0 = IntRange.exact(9)
    return InvariantBounds(k, k0, k1, l_range, kml, 1, bounds_general(block).weighted_sum_bound)


def best_bounds(block: BlockParams) -> InvariantBounds:
    """Tightest available bounds: the refinements intersected with the general ones."""
    g = bounds_general(block)
    p, m, n, l, e = block.as_tuple()
    layers = [g]
    if n == 1:
        layers.append(bounds_M(block))
    if (m, n, l) == (2, 1, 1):
        layers.append(bounds_extraspecial(block))
    out = layers[0]
    for extra in layers[1:]:
        out = InvariantBounds(
            k=out.k.intersect(extra.k),
            k0=out.k0.intersect(extra.k0),
            k1=out.k1.intersect(extra.k1),
            l=out.l.intersect(extra.l),
            k_minus_l=extra.k_minus_l if extra.k_minus_l is not None else out.k_minus_l,
            height_vanishing_above=min(out.height_vanishing_above, extra.height_vanishing_above),
            weighted_sum_bound=min(out.weighted_sum_bound, extra.weighted_sum_bound),
        )
    return tighten(out)


def _narrow(r: IntRange, lo: int, hi: int) -> IntRange:
    return IntRange(max(r.lo, lo), min(r.hi, hi), r.excluded)


def tighten(b: InvariantBounds) -> InvariantBounds:
    """Propagate k = k0 + k1 (when heights are at most 1) and k - l until stable."""
    while True:
        k, k0, k1, l_range = b.k, b.k0, b.k1, b.l
        if b.height_vanishing_above <= 1:
            k1 = _narrow(k1, k.lo - k0.hi, k.hi - k0.lo)
            k0 = _narrow(k0, k.lo - k1.hi, k.hi - k1.lo)
            k = _narrow(k, k0.lo + k1.lo, k0.hi + k1.hi)
        if b.k_minus_l is not None:
            l_range = _narrow(l_range, k.lo - b.k_minus_l, k.hi - b.k_minus_l)
            k = _narrow(k, l_range.lo + b.k_minus_l, l_range.hi + b.k_minus_l)
        nxt = replace(b, k=k, k0=k0, k1=k1, l=l_range)
        if nxt == b:
            return b
        b = nxt


@dataclass(frozen=True)
class ExactInvariants:
    k: IntRange
    k0: IntRange
    k1: IntRange | None
    l: IntRange
    k_minus_l: int | None
    source: str = "paper_exact"


def exact_invariants(block: BlockParams) -> ExactInvariants | None:
    """Values proved exactly; ``None`` when they are not known."""
    p, m, n, l, e = block.as_tuple()
    if e == 1:
        kD = formulas.class_number(p, m, n, l)
        k1 = IntRange.exact(kD - p**m) if n == 1 else None
        kml = kD - 1 if n == 1 else None
        return ExactInvariants(
            IntRange.exact(kD), IntRange.exact(p ** (n + l)), k1, IntRange.exact(1), kml
        )
    if (m, n, l) == (2, 1, 1) and e == 2 and p <= 11:
        return ExactInvariants(
            k=IntRange.exact((p * p + 4 * p - 1) // 2),
            k0=IntRange.exact(p * (p + 3) // 2),
            k1=IntRange.exact((p - 1) // 2),
            l=IntRange.exact(2),
            k_minus_l=(p * p - 1) // 2 + 2 * (p - 1),
        )
    if (m, n, l) == (2, 1, 1) and e == 2:
        # k_0 is known for every p; the rest only up to the extraspecial intervals
        b = bounds_extraspecial(block)
        return ExactInvariants(
            k=b.k, k0=IntRange.exact(p * (p + 3) // 2), k1=b.k1, l=b.l, k_minus_l=b.k_minus_l
        )
    if p == 3 and n == 1 and e == 2:
        kml = formulas.as_int(formulas.k_minus_l_cyclic_maximal(p, m, e), "k - l")
        k_lo = (11 * 3 ** (m - 2) + 9) // 2
        k1_lo = 3 ** (m - 2)
        k0 = IntRange.exact((3**m + 9) // 2)
        if m <= 3:
            return ExactInvariants(
                IntRange.exact(k_lo), k0, IntRange.exact(k1_lo), IntRange.exact(2), kml
            )
        return ExactInvariants(
            IntRange(k_lo, k_lo + 1), k0, IntRange(k1_lo, k1_lo + 1), IntRange(2, 3), kml
        )
    return None


# --- conjectures ------------------------------------------------------------------

_RELATIONS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
}


@dataclass(frozen=True)
class Check:
    """A single inequality ``lhs relation rhs``; verdict None when undecided."""

    name: str
    relation: str
    lhs: int | None
    rhs: int | None
    note: str = ""

    @property
    def verdict(self) -> bool | None:
        if self.lhs is None or self.rhs is None:
            return None
        return _RELATIONS[self.relation](self.lhs, self.rhs)


@dataclass(frozen=True)
class ConjectureReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict is False]


def _best_values(block: BlockParams) -> tuple[InvariantBounds, ExactInvariants | None]:
    bounds = best_bounds(block)
    exact = exact_invariants(block)
    if exact is not None:
        bounds = replace(
            bounds,
            k=bounds.k.intersect(exact.k),
            k0=bounds.k0.intersect(exact.k0),
            k1=bounds.k1.intersect(exact.k1) if exact.k1 is not None else bounds.k1,
            l=bounds.l.intersect(exact.l),
        )
    return bounds, exact


def conjecture_checks(block: BlockParams) -> ConjectureReport:
    p, m, n, l, e = block.as_tuple()
    bounds, exact = _best_values(block)
    order = p ** (m + n)
    index_derived = p ** (n + l)
    index_center = p ** (2 * (m - l))
    kD = formulas.class_number(p, m, n, l)
    kDprime = p ** (m - l)
    checks: list[Check] = [
        Check("brauer_k", "<=", bounds.k.hi, order, "k(B) <= |D|"),
        Check("olsson", "<=", bounds.k0.hi, index_derived, "k_0(B) <= |D:D'|"),
    ]
    if exact is not None and exact.k.is_exact and exact.k0.is_exact:
        checks.append(Check("height_zero", "<", exact.k0.value, exact.k.value, "exact k_0 < exact k"))
    else:
        hzc_k0 = formulas.k0_upper(p, m, n, l, e)
        hzc_k = formulas.k_lower(p, m, n, l, e)
        checks.append(
            Check(
                "height_zero", "<", formulas.as_int(hzc_k0), formulas.as_int(hzc_k),
                "k_0 upper bound < k lower bound (equivalent to l < m)",
            )
        )
    h_max = bounds.height_vanishing_above
    checks.append(
        Check(
            "robinson", "<", p**h_max, index_center,
            f"p^h < |D:Z(D)| for all heights h <= {h_max}",
        )
        if p**h_max < index_center
        else Check("robinson", "<", None, index_center, f"heights up to {h_max} not excluded")
    )
    if h_max <= 1:
        checks.append(Check("eaton_moreto", "==", 1, 1, "only heights 0 and 1 occur"))
    else:
        checks.append(Check("eaton_moreto", "==", None, 1, f"heights up to {h_max} not excluded"))
    # k/l <= k(D)  <=>  k <= k(D) * l, checked at the worst admissible values
    mn_ratio_rhs = kD * bounds.l.lo
    checks.append(
        Check("malle_navarro_ratio", "<=", bounds.k.hi, mn_ratio_rhs, "k(B) <= k(D) l(B)")
        if bounds.k.hi <= mn_ratio_rhs
        else Check("malle_navarro_ratio", "<=", None, mn_ratio_rhs, "undecided at current bounds")
    )
    mn_rhs = bounds.k0.lo * kDprime
    checks.append(
        Check(
            "malle_navarro_k0", "<=", bounds.k.hi, mn_rhs, "k(B) <= k_0(B) k(D')"
        )
        if bounds.k.hi <= mn_rhs
        else Check("malle_navarro_k0", "<=", None, mn_rhs, "undecided at current bounds")
    )
    if exact is not None and exact.l.is_exact:
        checks.append(Check("alperin_weight", "==", exact.l.value, e, "l(B) = e(B)"))
    else:
        checks.append(Check("alperin_weight", "==", None, e, "l(B) not determined"))
    if n == 1 and m >= 2:
        w_top = formulas.as_int(formulas.owc_top(p, m, e))
        w_next = formulas.as_int(formulas.owc_next(p, m, e))
        k0v = exact.k0.value if exact is not None and exact.k0.is_exact else None
        k1v = (
            exact.k1.value
            if exact is not None and exact.k1 is not None and exact.k1.is_exact
            else None
        )
        checks.append(Check("owc_k0", "==", k0v, w_top, "k_0(B) = w(D, m+1)"))
        checks.append(Check("owc_k1", "==", k1v, w_next, "k_1(B) = w(D, m)"))
        checks.append(
            Check(
                "alperin_mckay", "==", k0v, w_top,
                "k_0(B) equals k_0 of the Brauer correspondent (same formula)",
            )
        )
    return ConjectureReport(tuple(checks))


def consistency_problems(block: BlockParams) -> list[str]:
    """Exact values outside bounds, or a violated height-zero inequality."""
    problems = []
    exact = exact_invariants(block)
    layers: list[tuple[str, InvariantBounds]] = [("general", bounds_general(block))]
    p, m, n, l, e = block.as_tuple()
    if n == 1:
        layers.append(("M", bounds_M(block)))
    if (m, n, l) == (2, 1, 1):
        layers.append(("extraspecial", bounds_extraspecial(block)))
    for name, b in layers:
        if exact is None:
            continue
        for field_name in ("k", "k0", "k1", "l"):
            value = getattr(exact, field_name)
            if value is None:
                continue
            bound = getattr(b, field_name)
            if not value.within(bound):
                problems.append(f"{block.as_tuple()} {name}: exact {field_name} {value} outside {bound}")
        if b.k_minus_l is not None and exact.k_minus_l is not None and b.k_minus_l != exact.k_minus_l:
            problems.append(f"{block.as_tuple()} {name}: k - l {exact.k_minus_l} != {b.k_minus_l}")
    if exact is not None:
        if exact.k1 is not None and exact.k.is_exact and exact.k0.is_exact and exact.k1.is_exact:
            if exact.k0.value + exact.k1.value != exact.k.value:
                problems.append(f"{block.as_tuple()}: k0 + k1 != k")
        if exact.k.is_exact and exact.l.is_exact and exact.k_minus_l is not None:
            if exact.k.value - exact.l.value != exact.k_minus_l:
                problems.append(f"{block.as_tuple()}: k - l != stored difference")
        if exact.k.is_exact and exact.k0.is_exact and not exact.k0.value < exact.k.value:
            problems.append(f"{block.as_tuple()}: k0 < k violated")
    for c in conjecture_checks(block).failures():
        problems.append(f"{block.as_tuple()}: {c.name} fails ({c.lhs} {c.relation} {c.rhs})")
    return problems


def iter_blocks(groups: Iterable) -> Iterable[BlockParams]:
    from .fusion import inertial_indices

    for g in groups:
        for e in inertial_indices(g.p):
            yield BlockParams(g, e)
