import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockforge.characters import (
    check_orthogonality,
    galois_orbit_multiset,
    inertial_char_orbits,
    inertial_orbits,
    inertial_orbits_by_values,
    irr_table,
    irreducible_characters,
    owc_closed_forms,
    owc_weights,
    pcon_bullets,
)
from blockforge.errors import InvalidParameters
from blockforge.fusion import inertial_indices, make_block
from blockforge.group_core import make_params

N1_BLOCKS = [(p, m, 1, m - 1, e) for p, m in ((3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2))
             for e in inertial_indices(p)]


@pytest.mark.parametrize("p, m", [(3, 2), (3, 3), (5, 2)])
def test_orthogonality(p, m):
    table = irr_table(make_params(p, m, 1, m - 1))
    check_orthogonality(table)
    assert len(table.characters) == len(table.classes)
    assert sum(c.degree**2 for c in table.characters) == p ** (m + 1)


@pytest.mark.slow
def test_orthogonality_p7():
    check_orthogonality(irr_table(make_params(7, 2, 1, 1)))


def test_character_counts():
    chars = irreducible_characters(make_params(3, 3, 1, 2))
    assert sum(c.kind == "linear" for c in chars) == 27
    assert sum(c.kind == "induced" for c in chars) == 6
    with pytest.raises(InvalidParameters):
        irreducible_characters(make_params(3, 2, 2, 1))


def test_table_csv_is_rfc4180():
    text = irr_table(make_params(3, 2, 1, 1)).to_csv()
    lines = text.split("\r\n")
    assert lines[0].startswith("character,degree,defect")
    assert lines[1].startswith('chi_0_0,1,3,"(1, 0)"')
    assert len([ln for ln in lines if ln]) == 12


@pytest.mark.parametrize("block", N1_BLOCKS)
def test_owc_weights_match_closed_forms(block):
    b = make_block(*block)
    m = block[1]
    assert (owc_weights(b, m + 1), owc_weights(b, m)) == owc_closed_forms(b)


def test_owc_examples():
    assert (owc_weights(make_block(3, 2, 1, 1, 2), 3), owc_weights(make_block(3, 2, 1, 1, 2), 2)) == (9, 1)
    assert (owc_weights(make_block(3, 3, 1, 2, 2), 4), owc_weights(make_block(3, 3, 1, 2, 2), 3)) == (18, 3)


@pytest.mark.parametrize("block", [(3, 2, 1, 1, 2), (3, 3, 1, 2, 2), (5, 2, 1, 1, 4), (5, 2, 1, 1, 2)])
def test_orbits_by_labels_and_by_values_agree(block):
    b = make_block(*block)
    table = irr_table(b.group)
    by_label = {frozenset(orbit) for orbit in inertial_orbits(b)}
    by_value = {frozenset(table.characters[r] for r in orbit) for orbit in inertial_orbits_by_values(b, table)}
    assert by_label == by_value


@given(st.sampled_from(N1_BLOCKS))
def test_inertial_orbit_lengths_divide_e(block):
    b = make_block(*block)
    orbs = inertial_char_orbits(b)
    assert all(b.e % length == 0 for kind in orbs.values() for length in kind)
    assert sum(orbs["linear"]) == block[0] ** block[1]


def test_galois_orbits_p3():
    gal = galois_orbit_multiset(make_block(3, 2, 1, 1, 2))
    assert gal.lengths == (2, 2, 2, 1, 1)
    assert (gal.rational_min, gal.rational_max) == (2, 3)
    assert gal.total(2) == 10
    gal = galois_orbit_multiset(make_block(3, 3, 1, 2, 2))
    assert gal.lengths == (6, 3, 3, 2, 2, 2, 1)
    assert gal.total(2) == 21


@pytest.mark.parametrize("block", [b for b in N1_BLOCKS if b[4] >= 2])
def test_galois_orbits_match_closed_list(block):
    p, m, _, _, e = block
    assert list(galois_orbit_multiset(make_block(*block)).lengths) == pcon_bullets(p, m, e)


def test_galois_needs_nonnilpotent_block():
    with pytest.raises(InvalidParameters):
        galois_orbit_multiset(make_block(3, 2, 1, 1, 1))
