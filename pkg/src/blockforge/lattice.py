"""Integer quadratic-form primitives used by the decomposition-number arguments.

Everything here is exact integer enumeration: roots of the A_r form,
Gram-matrix checks on integral coefficient vectors, parity obstructions,
representations of N as a sum of t positive squares, the height-profile
equation sum r_i (i^2 - 1) = p(p-3)/2, and reduced positive definite binary
forms of a given determinant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import BudgetExceeded, InvalidParameters
from .group_core import is_prime

IntVector = tuple[int, ...]

SUM_SQUARES_MAX_N = 400


# --- the A_r form -----------------------------------------------------------

def q_products(a: Sequence[int]) -> int:
    """sum a_i^2 - sum a_i a_(i+1)."""
    return sum(v * v for v in a) - sum(a[i] * a[i + 1] for i in range(len(a) - 1))


def q_squares(a: Sequence[int]) -> int:
    """(a_1^2 + sum (a_i - a_(i+1))^2 + a_r^2) / 2."""
    if not a:
        return 0
    twice = a[0] ** 2 + a[-1] ** 2 + sum((a[i] - a[i + 1]) ** 2 for i in range(len(a) - 1))
    return twice // 2


def q_eval(a: Sequence[int]) -> int:
    value = q_products(a)
    if value != q_squares(a):
        raise AssertionError(f"the two forms of q disagree on {tuple(a)}")
    return value


class RootShape(str, Enum):
    INTERVAL = "interval"
    TWO_INTERVALS_SAME_SIGN = "two_intervals_same_sign"
    TWO_INTERVALS_OPPOSITE_SIGN = "two_intervals_opposite_sign"
    DOUBLED_PLATEAU = "doubled_plateau"
    OTHER = "other"


def _runs(values: Sequence[int]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for v in values:
        if out and out[-1][0] == v:
            out[-1] = (v, out[-1][1] + 1)
        else:
            out.append((v, 1))
    return out


def classify_root(a: Sequence[int]) -> RootShape:
    nz = [k for k, v in enumerate(a) if v]
    if not nz:
        return RootShape.OTHER
    inner = list(a[nz[0] : nz[-1] + 1])
    if inner[0] < 0:
        inner = [-v for v in inner]
    pattern = [v for v, _ in _runs(inner)]
    if pattern == [1]:
        return RootShape.INTERVAL
    if pattern == [1, 0, 1]:
        return RootShape.TWO_INTERVALS_SAME_SIGN
    if pattern == [1, 0, -1]:
        return RootShape.TWO_INTERVALS_OPPOSITE_SIGN
    if pattern == [1, 2, 1]:
        return RootShape.DOUBLED_PLATEAU
    return RootShape.OTHER


@dataclass(frozen=True)
class RootSolution:
    vector: IntVector
    shape: RootShape


def q_solutions(r: int, v: int) -> list[RootSolution]:
    """All a in Z^r with q(a) = v, for v in {1, 2}, in lexicographic order.

    Entries of a solution lie in {-2, ..., 2} when v <= 2, so the search is
    exhaustive over that box; the half-sum-of-squares form is used to prune
    partial vectors.
    """
    if r < 1:
        raise InvalidParameters(f"rank r must be positive, got {r}")
    if v not in (1, 2):
        raise InvalidParameters(f"only q(a) in {{1, 2}} is supported, got {v}")
    target = 2 * v
    out: list[RootSolution] = []
    vec = [0] * r

    def extend(k: int, cost: int) -> None:
        if k == r:
            if cost + vec[-1] ** 2 == target:
                t = tuple(vec)
                out.append(RootSolution(t, classify_root(t)))
            return
        for c in range(-2, 3):
            step = c * c if k == 0 else (vec[k - 1] - c) ** 2
            if cost + step <= target:
                vec[k] = c
                extend(k + 1, cost + step)
        vec[k] = 0

    extend(0, 0)
    return out


# --- Gram specifications ----------------------------------------------------

@dataclass(frozen=True)
class GramSpec:
    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    # row (character) index -> modulus every coefficient in that row must be divisible by
    row_moduli: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        k = len(self.labels)
        if len(self.gram) != k or any(len(row) != k for row in self.gram):
            raise InvalidParameters(f"Gram matrix must be {k} x {k}")
        for i in range(k):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InvalidParameters(f"Gram matrix is not symmetric at ({i}, {j})")
        for row, mod in self.row_moduli.items():
            if mod < 1:
                raise InvalidParameters(f"modulus {mod} for row {row} must be positive")


@dataclass(frozen=True)
class GramResult:
    ok: bool
    violation: str | None
    observed: tuple[tuple[int, ...], ...]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise InvalidParameters(f"length mismatch {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def gram_check(vectors: Sequence[Sequence[int]], spec: GramSpec) -> GramResult:
    if len(vectors) != len(spec.labels):
        raise InvalidParameters(f"{len(vectors)} vectors for {len(spec.labels)} labels")
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise InvalidParameters(f"vectors have differing lengths {sorted(lengths)}")
    observed = tuple(tuple(dot(u, v) for v in vectors) for u in vectors)
    for i, label_i in enumerate(spec.labels):
        for j in range(i, len(spec.labels)):
            if observed[i][j] != spec.gram[i][j]:
                return GramResult(
                    False,
                    f"({label_i},{spec.labels[j]}) = {observed[i][j]}, prescribed {spec.gram[i][j]}",
                    observed,
                )
    for row, mod in sorted(spec.row_moduli.items()):
        for label, vec in zip(spec.labels, vectors):
            if vec[row] % mod:
                return GramResult(False, f"{label}[{row}] = {vec[row]} not divisible by {mod}", observed)
    return GramResult(True, None, observed)


def coefficient_vectors(rows: Sequence[Mapping[str, int]], labels: Sequence[str]) -> list[IntVector]:
    """Transpose per-character coefficient rows into one integral vector per basis label."""
    for r, row in enumerate(rows):
        unknown = set(row) - set(labels)
        if unknown:
            raise InvalidParameters(f"row {r} uses unknown labels {sorted(unknown)}")
    return [tuple(row.get(label, 0) for row in rows) for label in labels]


def odd_overlap_count(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(1 for a, b in zip(u, v) if a % 2 and b % 2)


def parity_obstruction(odd_overlap_count: int) -> bool:
    """True iff vectors overlapping in that many odd·odd positions cannot be orthogonal.

    Each odd·odd product is odd whatever the signs, every other product is even,
    so the inner product has the parity of the overlap count.
    """
    if odd_overlap_count < 0:
        raise InvalidParameters("overlap count must be non-negative")
    return odd_overlap_count % 2 == 1


# --- sums of squares ----------------------------------------------------------

@lru_cache(maxsize=None)
def _deficit_parts(deficit: int, largest: int, slots: int) -> tuple[tuple[int, ...], ...]:
    """Multisets of integers s >= 2, s <= largest, at most ``slots`` of them,
    with sum (s^2 - 1) = deficit.  Each returned nonincreasing."""
    if deficit == 0:
        return ((),)
    if slots == 0:
        return ()
    out = []
    for s in range(min(largest, math.isqrt(deficit + 1)), 1, -1):
        for rest in _deficit_parts(deficit - (s * s - 1), s, slots - 1):
            out.append((s,) + rest)
    return tuple(out)


def sum_squares_exact(N: int, t: int, max_n: int = SUM_SQUARES_MAX_N) -> list[tuple[int, ...]]:
    """All multisets of t positive squares summing to N, each as a nonincreasing tuple of squares."""
    if N < 0 or t < 0:
        raise InvalidParameters("N and t must be non-negative")
    if N > max_n:
        raise BudgetExceeded(f"sum of squares search limited to N <= {max_n}, got {N}")
    if t > N:
        return []
    out = []
    for parts in _deficit_parts(N - t, N, t):
        out.append(tuple(s * s for s in parts) + (1,) * (t - len(parts)))
    return out


def forbidden_deficits(p: int, cap: int) -> set[int]:
    """r in 1..cap for which p^2 is not a sum of p^2 - r positive squares."""
    if cap > p * p:
        raise InvalidParameters(f"cap {cap} exceeds p^2 = {p * p}")
    N = p * p
    return {r for r in range(1, cap + 1) if not sum_squares_exact(N, N - r)}


# --- height profiles ----------------------------------------------------------

@dataclass(frozen=True)
class HeightProfile:
    """Nonzero multiplicities r_i, i >= 2, keyed by i."""

    counts: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def weight(self) -> int:
        return sum(r * (i * i - 1) for i, r in self.counts)

    def residue_sum(self, p: int) -> int:
        mod = (p - 1) // 2
        return sum(r % mod for _, r in self.counts)


def height_profile_target(p: int) -> int:
    return p * (p - 3) // 2


def height_profile_solutions(p: int, filtered: bool = True) -> list[HeightProfile]:
    """Solutions of sum_{i>=2} r_i (i^2 - 1) = p(p-3)/2.

    With ``filtered`` only those with sum_i (r_i mod (p-1)/2) <= 2 are kept.
    """
    if not is_prime(p) or p < 5:
        raise InvalidParameters(f"p must be an odd prime >= 5, got {p}")
    target = height_profile_target(p)
    top = math.isqrt(target + 1)
    out: list[HeightProfile] = []
    chosen: list[tuple[int, int]] = []

    def place(i: int, remaining: int) -> None:
        if remaining == 0:
            out.append(HeightProfile(tuple(sorted(chosen))))
            return
        if i < 2:
            return
        w = i * i - 1
        for r in range(remaining // w, -1, -1):
            if r:
                chosen.append((i, r))
            place(i - 1, remaining - r * w)
            if r:
                chosen.pop()

    place(top, target)
    if filtered:
        out = [h for h in out if h.residue_sum(p) <= 2]
    return sorted(out, key=lambda h: h.counts)


# --- binary forms ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BinaryForm:
    """Symmetric matrix (a b; b c), i.e. the form a X^2 + 2b XY + c Y^2."""

    a: int
    b: int
    c: int

    @property
    def det(self) -> int:
        return self.a * self.c - self.b * self.b

    @property
    def content(self) -> int:
        return math.gcd(self.a, self.b, self.c)

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.det > 0

    def is_reduced(self) -> bool:
        return 0 <= 2 * self.b <= self.a <= self.c

    def elementary_divisors(self) -> tuple[int, int]:
        d1 = self.content
        return (d1, self.det // d1)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def reduced_binary_forms(
    det: int, elementary_divisors: tuple[int, int] | None = None
) -> list[BinaryForm]:
    """Reduced positive definite (a b; b c) with ac - b^2 = det.

    Reduction forces 3a^2/4 <= det, which bounds the search.
    """
    if det < 1:
        raise InvalidParameters(f"determinant must be positive, got {det}")
    forms = []
    a = 1
    while 3 * a * a <= 4 * det:
        for b in range(0, a // 2 + 1):
            num = det + b * b
            if num % a == 0 and num // a >= a:
                forms.append(BinaryForm(a, b, num // a))
        a += 1
    if elementary_divisors is not None:
        d1, d2 = elementary_divisors
        if d1 * d2 != det or d2 % d1:
            return []
        forms = [f for f in forms if f.content == d1]
    return sorted(forms)
