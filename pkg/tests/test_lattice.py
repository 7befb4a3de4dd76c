import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockforge.acceptance import amc2_witness, count_square_partitions, q_brute_force
from blockforge.errors import BudgetExceeded, InvalidParameters
from blockforge.lattice import (
    BinaryForm,
    GramSpec,
    RootShape,
    classify_root,
    coefficient_vectors,
    forbidden_deficits,
    gram_check,
    height_profile_solutions,
    height_profile_target,
    odd_overlap_count,
    parity_obstruction,
    q_eval,
    q_products,
    q_solutions,
    q_squares,
    reduced_binary_forms,
    sum_squares_exact,
)

from .test_cyclotomic import DY_COLUMNS


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=12))
def test_two_expressions_of_the_form_agree(a):
    assert q_products(a) == q_squares(a)
    assert q_eval(a) >= 0
    assert (q_eval(a) == 0) == (not any(a))


@pytest.mark.parametrize("r", range(1, 7))
@pytest.mark.parametrize("v", [1, 2])
def test_solutions_match_box_search(r, v):
    assert [s.vector for s in q_solutions(r, v)] == sorted(q_brute_force(r, v))


def test_root_counts():
    # q = 1 roots of A_r are the r(r+1) intervals +-(0..0 1..1 0..0)
    assert [len(q_solutions(r, 1)) for r in range(1, 9)] == [r * (r + 1) for r in range(1, 9)]
    assert [len(q_solutions(r, 2)) for r in range(1, 9)] == [0, 0, 6, 30, 90, 210, 420, 756]


def test_classifier_examples():
    assert classify_root((0, 1, 1, 0)) is RootShape.INTERVAL
    assert classify_root((1, 0, -1)) is RootShape.TWO_INTERVALS_OPPOSITE_SIGN
    assert classify_root((-1, 0, -1)) is RootShape.TWO_INTERVALS_SAME_SIGN
    assert classify_root((1, 2, 2, 1)) is RootShape.DOUBLED_PLATEAU
    assert classify_root((2, 0, 0)) is RootShape.OTHER
    assert q_eval((1, 0, -1)) == 2
    assert q_eval((1, 1, -1)) == 3


@given(st.integers(2, 7), st.sampled_from([1, 2]))
def test_solutions_closed_under_symmetries(r, v):
    vecs = {s.vector for s in q_solutions(r, v)}
    assert {tuple(-x for x in a) for a in vecs} == vecs
    assert {a[::-1] for a in vecs} == vecs
    assert all(s.shape is not RootShape.OTHER for s in q_solutions(r, v))


def test_q_solutions_rejects_other_values():
    with pytest.raises(InvalidParameters):
        q_solutions(3, 3)
    with pytest.raises(InvalidParameters):
        q_solutions(0, 1)


def test_amc2_witness_gram_and_form():
    rows, spec = amc2_witness()
    result = gram_check([list(c) for c in zip(*rows)], spec)
    assert result.ok, result.violation
    assert sum(q_eval(a) for a in rows) == 35
    # exactly one row has q = 2, the p = 7 exception (1, 0, 1)
    assert [a for a in rows if q_eval(a) == 2] == [(1, 0, 1)]
    assert sum(1 for a in rows if any(a)) == 34


def test_gram_check_reports_violation():
    spec = GramSpec(labels=("u", "v"), gram=((2, 1), (1, 2)))
    bad = gram_check([(1, 1, 0), (0, 1, 0)], spec)
    assert not bad.ok and "(v,v)" in bad.violation
    with pytest.raises(InvalidParameters):
        GramSpec(labels=("u", "v"), gram=((2, 1), (0, 2)))


def test_gram_check_row_moduli():
    spec = GramSpec(labels=("u",), gram=((49,),), row_moduli={0: 7})
    assert gram_check([(7, 0)], spec).ok
    bad = gram_check([(1, 7)], GramSpec(("u",), ((50,),), {0: 7}))
    assert not bad.ok and "not divisible by 7" in bad.violation


def test_dy_coefficient_relations():
    rows = [
        {"a1": c1[0], "b1": c1[1], "a2": c2[0], "b2": c2[1]}
        for c1, c2 in zip(*DY_COLUMNS)
    ]
    labels = ("a1", "b1", "a2", "b2")
    vectors = coefficient_vectors(rows, labels)
    spec = GramSpec(
        labels=labels,
        gram=((4, 2, 2, 1), (2, 4, 1, 2), (2, 1, 4, 2), (1, 2, 2, 4)),
    )
    result = gram_check(vectors, spec)
    assert result.ok, result.violation


def test_parity_obstruction():
    # an integral vector with +-1 in p^2 positions cannot be orthogonal to one
    # with odd entries there: nine odd overlaps give an odd inner product
    u = [1] * 9 + [0]
    v = [1, -1, 1, 1, -1, 1, 1, 1, -3, 4]
    assert odd_overlap_count(u, v) == 9
    assert parity_obstruction(9)
    assert sum(a * b for a, b in zip(u, v)) % 2 == 1
    assert not parity_obstruction(8)
    assert all(parity_obstruction(p * p) for p in (3, 5, 7))


@given(st.integers(0, 60), st.integers(0, 30))
def test_sum_squares_agrees_with_dp(N, t):
    sols = sum_squares_exact(N, t)
    assert len(sols) == count_square_partitions(N, t)
    for s in sols:
        assert len(s) == t and sum(s) == N
        assert all(math.isqrt(x) ** 2 == x and x > 0 for x in s)
        assert list(s) == sorted(s, reverse=True)


def test_sum_squares_examples_and_budget():
    assert sum_squares_exact(25, 22) == [(4,) + (1,) * 21]
    assert sum_squares_exact(25, 24) == []
    assert sum_squares_exact(25, 25) == [(1,) * 25]
    with pytest.raises(BudgetExceeded):
        sum_squares_exact(401, 3)


def test_forbidden_deficits():
    assert forbidden_deficits(5, 15) == {1, 2, 4, 5, 7, 10, 13}
    assert forbidden_deficits(7, 15) == {1, 2, 4, 5, 7, 10, 13}
    oracle = {r for r in range(1, 16) if count_square_partitions(49, 49 - r) == 0}
    assert forbidden_deficits(7, 15) == oracle


def knapsack_profiles(p):
    """Independent enumeration of sum r_i (i^2 - 1) = target by brute iteration."""
    target = height_profile_target(p)
    weights = [(i, i * i - 1) for i in range(2, math.isqrt(target + 1) + 1)]
    out = []
    for counts in itertools.product(*[range(target // w + 1) for _, w in weights]):
        if sum(c * w for c, (_, w) in zip(counts, weights)) == target:
            out.append({i: c for c, (i, _) in zip(counts, weights) if c})
    return out


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_height_profiles_against_knapsack(p):
    raw = [h.as_dict() for h in height_profile_solutions(p, filtered=False)]
    oracle = knapsack_profiles(p)
    assert sorted(map(sorted, map(dict.items, raw))) == sorted(map(sorted, map(dict.items, oracle)))
    filtered = [h.as_dict() for h in height_profile_solutions(p)]
    mod = (p - 1) // 2
    assert filtered == [d for d in raw if sum(r % mod for r in d.values()) <= 2]


def test_height_profile_examples():
    for p in (5, 7, 11):
        assert height_profile_solutions(p) == []
    assert {2: 19, 3: 1} in [h.as_dict() for h in height_profile_solutions(13)]
    assert [h.as_dict() for h in height_profile_solutions(7, filtered=False)] == [{2: 2, 3: 1}]
    with pytest.raises(InvalidParameters):
        height_profile_solutions(3)


def naive_reduced_forms(det):
    bound = 2 * math.isqrt(det) + 2
    out = []
    for a in range(1, bound + 1):
        for b in range(-a, a + 1):
            for c in range(a, det + b * b + 1):
                f = BinaryForm(a, b, c)
                if f.det == det and f.is_reduced():
                    out.append(f)
    return sorted(out)


@given(st.integers(1, 60))
def test_binary_forms_against_naive(det):
    assert reduced_binary_forms(det) == naive_reduced_forms(det)


def test_binary_form_examples():
    assert [f.as_tuple() for f in reduced_binary_forms(9)] == [(1, 0, 9), (2, 1, 5), (3, 0, 3)]
    assert [f.as_tuple() for f in reduced_binary_forms(9, (1, 9))] == [(1, 0, 9), (2, 1, 5)]
    assert BinaryForm(3, 0, 3).elementary_divisors() == (3, 3)
    with pytest.raises(InvalidParameters):
        reduced_binary_forms(0)
