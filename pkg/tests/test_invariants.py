import pytest
from hypothesis import given

from blockforge import formulas
from blockforge.errors import InvalidParameters
from blockforge.fusion import k_lower, make_block
from blockforge.invariants import (
    IntRange,
    best_bounds,
    bounds_extraspecial,
    bounds_general,
    bounds_M,
    conjecture_checks,
    consistency_problems,
    exact_invariants,
)

from .conftest import SMALL_BLOCKS, blocks


def test_int_range():
    r = IntRange(22, 25, frozenset({23, 24}))
    assert r.values() == [22, 25] and 23 not in r and 25 in r
    assert str(r) == "[22, 25] \\ {23, 24}"
    assert IntRange.exact(4).value == 4
    assert IntRange(3, 5).intersect(IntRange(5, 9)).value == 5
    with pytest.raises(ValueError):
        IntRange(3, 2)


def test_bounds_general_examples():
    b = bounds_general(make_block(3, 3, 1, 2, 2))
    assert b.k.lo == 21 and b.k.hi == 22
    assert b.k0.hi == 18 and b.weighted_sum_bound == 54
    assert b.height_vanishing_above == 1
    b = bounds_general(make_block(3, 2, 1, 1, 2))
    assert (b.k.lo, b.k.hi, b.k0.lo, b.k0.hi) == (10, 11, 7, 9)


@given(blocks())
def test_trivial_inertial_index_gives_olsson_boundary(block):
    p, m, n, l, e = block.as_tuple()
    if e == 1:
        assert bounds_general(block).k0.hi == p ** (n + l)


@given(blocks())
def test_general_lower_bound_is_the_subsection_count(block):
    assert bounds_general(block).k.lo == k_lower(block)


def test_bounds_M_examples():
    b = bounds_M(make_block(3, 3, 1, 2, 2))
    assert b.k0.value == 18
    assert formulas.as_int(formulas.k0_lower_cyclic_maximal(3, 3, 2)) == 16
    b = bounds_M(make_block(5, 2, 1, 1, 2))
    assert b.k_minus_l == 20 and (b.k1.lo, b.k1.hi) == (2, 3)
    for p, m in ((3, 2), (5, 3), (7, 2)):
        kD = formulas.class_number(p, m, 1, m - 1)
        assert bounds_M(make_block(p, m, 1, m - 1, 1)).k_minus_l == kD - 1
    with pytest.raises(InvalidParameters):
        bounds_M(make_block(3, 2, 2, 1, 2))


def test_bounds_extraspecial_examples():
    b = bounds_extraspecial(make_block(5, 2, 1, 1, 4))
    assert b.k.values() == [26, 27, 28]
    assert b.k0.values() == [22, 25]
    assert b.k1.values() == [1, 2, 3, 4]
    assert b.l.values() == [4, 5, 6]
    for p in (5, 7, 11, 13):
        k0 = bounds_extraspecial(make_block(p, 2, 1, 1, 2)).k0
        assert k0.values() == [p * (p + 3) // 2 - 1, p * (p + 3) // 2]
    raw = bounds_extraspecial(make_block(3, 2, 1, 1, 2), refine=False)
    assert raw.k.values() == [10, 11]
    assert bounds_extraspecial(make_block(3, 2, 1, 1, 2)).k.value == 10
    with pytest.raises(InvalidParameters):
        bounds_extraspecial(make_block(3, 3, 1, 2, 2))


@pytest.mark.parametrize(
    "block, values",
    [
        ((3, 2, 1, 1, 2), (10, 9, 1, 2)),
        ((7, 2, 1, 1, 2), (38, 35, 3, 2)),
        ((3, 3, 1, 2, 2), (21, 18, 3, 2)),
        ((5, 2, 1, 1, 2), (22, 20, 2, 2)),
        ((11, 2, 1, 1, 2), (82, 77, 5, 2)),
    ],
)
def test_exact_values(block, values):
    x = exact_invariants(make_block(*block))
    assert (x.k.value, x.k0.value, x.k1.value, x.l.value) == values
    assert x.k.value - x.l.value == x.k_minus_l


def test_exact_two_valued_and_unknown():
    x = exact_invariants(make_block(3, 4, 1, 3, 2))
    assert x.k0.value == (81 + 9) // 2
    assert x.k.values() == [54, 55] and x.l.values() == [2, 3]
    assert exact_invariants(make_block(5, 2, 1, 1, 4)) is None
    assert exact_invariants(make_block(5, 3, 2, 2, 2)) is None
    x = exact_invariants(make_block(13, 2, 1, 1, 2))
    assert x.k0.value == 13 * 16 // 2 and not x.k.is_exact


def test_e1_exact_values():
    x = exact_invariants(make_block(3, 3, 2, 2, 1))
    assert x.k.value == formulas.class_number(3, 3, 2, 2)
    assert x.k0.value == 3**4 and x.l.value == 1 and x.k1 is None


@pytest.mark.parametrize("block", SMALL_BLOCKS + [(p, 2, 1, 1, e) for p in (11, 13) for e in (1, 2)])
def test_exact_values_lie_in_every_bound(block):
    assert consistency_problems(make_block(*block)) == []


@given(blocks())
def test_bounds_are_nonempty_and_ordered(block):
    b = best_bounds(block)
    p, m, n, l, e = block.as_tuple()
    assert b.k0.hi <= p ** (n + l)
    assert b.k.hi <= b.k0.hi + b.k1.hi or b.height_vanishing_above > 1
    assert b.l.lo >= 1


def test_conjecture_examples():
    rep = conjecture_checks(make_block(3, 2, 1, 1, 2))
    assert rep.failures() == []
    assert all(c.verdict for c in rep.checks)
    assert (rep["owc_k0"].lhs, rep["owc_k0"].rhs) == (9, 9)
    assert (rep["owc_k1"].lhs, rep["owc_k1"].rhs) == (1, 1)
    rob = conjecture_checks(make_block(3, 3, 1, 2, 2))["robinson"]
    assert (rob.lhs, rob.rhs, rob.verdict) == (3, 9, True)
    rep = conjecture_checks(make_block(5, 2, 1, 1, 2))
    assert (rep["malle_navarro_ratio"].lhs, rep["malle_navarro_ratio"].rhs) == (22, 29 * 2)
    assert rep["malle_navarro_k0"].verdict and 22 <= 20 * 5


@given(blocks())
def test_conjecture_verdicts_recomputable(block):
    for c in conjecture_checks(block).checks:
        if c.verdict is not None:
            recomputed = {"<": c.lhs < c.rhs, "<=": c.lhs <= c.rhs, "==": c.lhs == c.rhs}[c.relation]
            assert recomputed == c.verdict
        assert c.verdict is not False
