"""The acceptance suite: thirteen end-to-end checks, each returning (ok, detail).

Shared by ``blockforge verify`` and the test suite.  Oracles here are kept
independent of the code they check (plain loops and dynamic programming).
"""
from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from . import characters, lattice
from .fusion import inertial_indices, k_lower_formula, make_block, semidirect_class_count
from .group_core import class_count_formula, conjugacy_classes, make_params, valid_group_params
from .invariants import bounds_general, exact_invariants
from .report import build_report, iter_reports

GRID_PRIMES = (3, 5, 7)
GRID_MAX_ORDER = 5**5
SHARPNESS_LIMIT = 10**5


@dataclass(frozen=True)
class Outcome:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:>2}. {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _grid():
    return list(valid_group_params(GRID_PRIMES, GRID_MAX_ORDER))


# --- oracles --------------------------------------------------------------------------

def count_square_partitions(N: int, t: int) -> int:
    """Number of multisets of t positive squares with sum N (knapsack DP)."""
    # ways[c][s]: multisets of c squares summing to s using squares seen so far
    ways = [[0] * (N + 1) for _ in range(t + 1)]
    ways[0][0] = 1
    k = 1
    while k * k <= N:
        sq = k * k
        for c in range(1, t + 1):
            for s in range(sq, N + 1):
                ways[c][s] += ways[c - 1][s - sq]
        k += 1
    return ways[t][N]


def q_brute_force(r: int, v: int) -> list[tuple[int, ...]]:
    out = []
    for a in itertools.product(range(-2, 3), repeat=r):
        s = sum(x * x for x in a) - sum(a[i] * a[i + 1] for i in range(r - 1))
        if s == v:
            out.append(a)
    return out


# --- the p = 7 witness configuration ----------------------------------------------------

def amc2_witness() -> tuple[list[tuple[int, int, int]], lattice.GramSpec]:
    """Rows (a_0, a_2, a_3) of the admissible p = 7 column d^x with k_0 = 34."""
    rows = (
        [(1, 0, 0)] * 13
        + [(1, 1, 1)] * 6
        + [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
        + [(0, 1, 0)] * 6
        + [(0, 0, 1)] * 6
        + [(0, 0, 0)] * 4
    )
    spec = lattice.GramSpec(
        labels=("a0", "a2", "a3"),
        gram=((21, 7, 7), (7, 14, 7), (7, 7, 14)),
    )
    return rows, spec


# --- criteria -------------------------------------------------------------------------------

def criterion_class_count():
    grid = _grid()
    bad = []
    for G in grid:
        brute = len(conjugacy_classes(G, budget=GRID_MAX_ORDER))
        if brute != class_count_formula(G):
            bad.append((G.as_tuple(), brute, class_count_formula(G)))
    return not bad, f"{len(grid)} groups, mismatches {bad}"


def criterion_sharpness():
    checked, bad = 0, []
    for G in _grid():
        for e in inertial_indices(G.p):
            if G.order * e > SHARPNESS_LIMIT:
                continue
            block = make_block(*G.as_tuple(), e)
            sd = semidirect_class_count(block, budget=SHARPNESS_LIMIT)
            checked += 1
            if sd != k_lower_formula(block):
                bad.append((block.as_tuple(), sd, k_lower_formula(block)))
    return not bad, f"{checked} blocks, mismatches {bad}"


def _invariants(doc) -> dict:
    return {name: doc.value("invariants", name) for name in ("k", "k0", "k1", "l", "k_minus_l")}


def criterion_p3():
    got = _invariants(build_report(make_block(3, 2, 1, 1, 2)))
    want = {"k": 10, "k0": 9, "k1": 1, "l": 2, "k_minus_l": 8}
    forms = {f.as_tuple() for f in lattice.reduced_binary_forms(9, (1, 9))}
    ok = got == want and forms == {(1, 0, 9), (2, 1, 5)}
    return ok, f"invariants {got}, Cartan candidates {sorted(forms)}"


def criterion_m3():
    got = _invariants(build_report(make_block(3, 3, 1, 2, 2)))
    b = bounds_general(make_block(3, 3, 1, 2, 2))
    ok = (
        {k: got[k] for k in ("k", "k0", "k1", "l")} == {"k": 21, "k0": 18, "k1": 3, "l": 2}
        and b.weighted_sum_bound == 54
        and b.k.hi == 22
    )
    return ok, f"invariants {got}, weighted sum <= {b.weighted_sum_bound}, k <= {b.k.hi}"


def criterion_extraspecial_table():
    bad = []
    for p in (3, 5, 7, 11):
        got = _invariants(build_report(make_block(p, 2, 1, 1, 2)))
        want = {
            "k": (p * p + 4 * p - 1) // 2, "k0": p * (p + 3) // 2,
            "k1": (p - 1) // 2, "l": 2,
        }
        if {k: got[k] for k in want} != want:
            bad.append((p, got, want))
    return not bad, f"p in (3, 5, 7, 11), mismatches {bad}"


def criterion_height_profiles():
    empty = {p: lattice.height_profile_solutions(p) for p in (5, 7, 11)}
    p13 = [h.as_dict() for h in lattice.height_profile_solutions(13)]
    raw7 = lattice.height_profile_solutions(7, filtered=False)
    target = {2: 2, 3: 1}
    ok = (
        all(not v for v in empty.values())
        and {2: 19, 3: 1} in p13
        and any(h.as_dict() == target for h in raw7)
        and all(h.residue_sum(7) > 2 for h in raw7 if h.as_dict() == target)
    )
    return ok, f"p=5,7,11 filtered empty; p=13 {p13}; p=7 unfiltered {[h.as_dict() for h in raw7]}"


def criterion_forbidden_deficits():
    got = lattice.forbidden_deficits(5, 15)
    oracle = {r for r in range(1, 16) if count_square_partitions(25, 25 - r) == 0}
    parity = {p: lattice.parity_obstruction(p * p) for p in (3, 5, 7)}
    ok = got == oracle == {1, 2, 4, 5, 7, 10, 13} and all(parity.values())
    return ok, f"forbidden {sorted(got)}, DP oracle {sorted(oracle)}, parity {parity}"


def criterion_roots():
    bad = []
    for r in range(2, 9):
        for v in (1, 2):
            sols = lattice.q_solutions(r, v)
            vecs = {s.vector for s in sols}
            if vecs != set(q_brute_force(r, v)):
                bad.append((r, v, "oracle"))
            if any(s.shape is lattice.RootShape.OTHER for s in sols):
                bad.append((r, v, "other"))
            if {tuple(-x for x in a) for a in vecs} != vecs or {a[::-1] for a in vecs} != vecs:
                bad.append((r, v, "symmetry"))
    return not bad, f"r = 2..8, q in (1, 2), problems {bad}"


def criterion_owc():
    pairs = {
        (3, 2): characters.owc_weights(make_block(3, 2, 1, 1, 2), 3),
        (3, 2, "next"): characters.owc_weights(make_block(3, 2, 1, 1, 2), 2),
        (3, 3): characters.owc_weights(make_block(3, 3, 1, 2, 2), 4),
        (3, 3, "next"): characters.owc_weights(make_block(3, 3, 1, 2, 2), 3),
    }
    ok = (pairs[(3, 2)], pairs[(3, 2, "next")], pairs[(3, 3)], pairs[(3, 3, "next")]) == (9, 1, 18, 3)
    checked, bad = 0, []
    for G in _grid():
        if G.n != 1:
            continue
        for e in inertial_indices(G.p):
            block = make_block(*G.as_tuple(), e)
            got = (characters.owc_weights(block, G.m + 1), characters.owc_weights(block, G.m))
            checked += 1
            if got != characters.owc_closed_forms(block):
                bad.append((block.as_tuple(), got))
    return ok and not bad, f"(9, 1) and (18, 3) reproduced; {checked} n=1 blocks, mismatches {bad}"


def criterion_pcon():
    block = make_block(3, 3, 1, 2, 2)
    gal = characters.galois_orbit_multiset(block)
    exact = exact_invariants(block)
    rational = exact.l.value
    total = gal.total(rational)
    ok = (
        total == 21
        and gal.counter() == Counter([3, 3, 1, 2, 2, 2, 6])
        and list(gal.lengths) == characters.pcon_bullets(3, 3, 2)
    )
    return ok, f"orbits {list(gal.lengths)} + {rational} rational = {total}"


def criterion_character_tables():
    bad = []
    for p, m in ((3, 2), (3, 3), (5, 2), (7, 2)):
        params = make_params(p, m, 1, m - 1)
        table = characters.irr_table(params)
        try:
            characters.check_orthogonality(table)
        except Exception as exc:  # noqa: BLE001 - reported as a failure line
            bad.append((p, m, str(exc)))
        if sum(c.degree**2 for c in table.characters) != params.order:
            bad.append((p, m, "degrees"))
    return not bad, f"(3,2), (3,3), (5,2), (7,2): problems {bad}"


def criterion_amc2_witness():
    rows, spec = amc2_witness()
    columns = [list(col) for col in zip(*rows)]
    result = lattice.gram_check(columns, spec)
    q_total = sum(lattice.q_eval(a) for a in rows)
    ok = result.ok and q_total == 7 * (7 + 3) // 2
    return ok, f"Gram {result.observed}, sum q = {q_total}"


def criterion_consistency_sweep():
    count = 0
    for _ in iter_reports(GRID_PRIMES, GRID_MAX_ORDER):
        count += 1
    return True, f"{count} reports, no consistency violations"


CRITERIA: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("class-count formula", criterion_class_count),
    ("sharpness of the lower bound", criterion_sharpness),
    ("p = 3 extraspecial block", criterion_p3),
    ("M_81 block", criterion_m3),
    ("extraspecial table p <= 11", criterion_extraspecial_table),
    ("height profile filter", criterion_height_profiles),
    ("forbidden deficits and parity", criterion_forbidden_deficits),
    ("A_r roots", criterion_roots),
    ("ordinary weights", criterion_owc),
    ("p-conjugate orbits", criterion_pcon),
    ("character tables", criterion_character_tables),
    ("p = 7 witness", criterion_amc2_witness),
    ("consistency sweep", criterion_consistency_sweep),
]


def run_criterion(number: int) -> Outcome:
    title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # noqa: BLE001 - any error is a failed criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(number, title, ok, detail, time.perf_counter() - start)


def run_all() -> list[Outcome]:
    return [run_criterion(i) for i in range(1, len(CRITERIA) + 1)]
