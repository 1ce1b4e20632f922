from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitlab import linalg as la
from orbitlab.errors import RankTooLarge, UnsupportedSeries
from orbitlab.rootdata import build_root_datum, parse_factors

CASES = [
    ("A1", 2, 2), ("A2", 6, 6), ("A3", 12, 24), ("B2", 8, 8), ("C2", 8, 8),
    ("G2", 12, 12), ("B3", 18, 48), ("D4", 24, 192), ("A1xA1", 4, 4),
]


@pytest.mark.parametrize("text,nroots,worder", CASES)
def test_counts(text, nroots, worder):
    rd = build_root_datum(parse_factors(text))
    assert len(rd.roots) == nroots
    assert len(rd.weyl_group()) == worder


def test_center_coordinates_are_untouched():
    rd = build_root_datum([("A", 1)], center_rank=1)
    assert rd.rank == 2
    assert all(r[1] == 0 for r in rd.roots)
    assert all(c[1] == 0 for c in rd.coroots)


def test_pairing_root_coroot_is_two():
    rd = build_root_datum(parse_factors("C2"))
    for r, h in zip(rd.roots, rd.coroots):
        assert la.dot(r, h) == 2


def test_rho_pairs_to_one_with_simple_coroots():
    rd = build_root_datum(parse_factors("B3"))
    for i in rd.simple_index:
        assert la.dot(rd.rho, rd.coroots[i]) == 1


def test_automorphisms_of_a1xa1_include_swap():
    rd = build_root_datum(parse_factors("A1xA1"))
    assert len(rd.automorphism_group()) == 8


def test_errors():
    with pytest.raises(UnsupportedSeries):
        build_root_datum([("E", 6)])
    with pytest.raises(RankTooLarge):
        build_root_datum([("A", 9)])


weights = st.lists(st.integers(-4, 4), min_size=2, max_size=2)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A2", "B2", "C2", "G2"]), weights, weights)
def test_weyl_preserves_form(text, u, v):
    rd = build_root_datum(parse_factors(text))
    u, v = la.frac_vec(u), la.frac_vec(v)
    for w in rd.weyl_group():
        assert rd.inner(w.act(u), w.act(v)) == rd.inner(u, v)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3"]))
def test_reflections_are_involutions(text):
    rd = build_root_datum(parse_factors(text))
    for i in range(rd.npos):
        s = rd.reflection_matrix(i)
        assert la.mat_mul(s, s) == la.identity(rd.rank)
        assert la.mat_vec(s, rd.roots[i]) == la.scale(-1, rd.roots[i])
