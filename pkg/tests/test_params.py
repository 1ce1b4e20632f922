from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitlab import linalg as la
from orbitlab.characters import elliptic_point
from orbitlab.errors import DescentUndefined, NotAChamber, NotFixed
from orbitlab.metaplectic.stabilizer import pinned_group
from orbitlab.params import (ParamTilde, build_positive_system, classify_param,
                             count_descent_fiber, descend_at_e, descent_fiber_formula,
                             enumerate_chambers, is_integral_regG, support_orbits_ssInc)
from orbitlab.realform import get_group, real_weyl_group

from conftest import param


def swap_of(frame):
    ident = la.identity(frame.datum.rank)
    return next(w for w in pinned_group(frame) if w != ident)


def test_chamber_counts():
    fr = get_group("sp4R").fundamental_frame
    pts = enumerate_chambers(fr, (0, 0))
    assert len(pts) == 8
    assert sum(r for _, r in pts) == 4


def test_regular_lambda_has_one_vacuous_chamber():
    pts = enumerate_chambers(get_group("su2").fundamental_frame, (3,))
    assert [(p.Fplus, r) for p, r in pts] == [((), True)]


def test_su2_zero_is_not_regular():
    assert [r for _, r in enumerate_chambers(get_group("su2").fundamental_frame, (0,))] == [False, False]


def test_bad_chamber_rejected():
    fr = get_group("sl2R").fundamental_frame
    with pytest.raises(NotAChamber):
        ParamTilde(fr, enumerate_chambers(fr, (0,))[0][0].lam, (1, 1))


@pytest.mark.parametrize("group,ell,expected", [
    ("su2", (3,), True),
    ("su2", (Fraction(1, 2),), False),
    ("sl2R", (0,), True),
    ("psl2R", (0,), False),
    ("psl2R", (1,), True),
    ("psl2R", (2,), False),
])
def test_integrality(group, ell, expected):
    for pt, regular in enumerate_chambers(get_group(group).fundamental_frame, ell):
        assert is_integral_regG(pt) is expected


def test_integrality_is_chamber_independent():
    for group in ("sl2R", "psl2R", "sl2Rsq_swap", "gl2R"):
        fr = get_group(group).fundamental_frame
        ell = (0,) * fr.datum.rank_ss + (Fraction(1, 3),) * fr.datum.rank_center
        vals = {is_integral_regG(p) for p, r in enumerate_chambers(fr, ell) if r}
        assert len(vals) == 1


def test_classification_flags():
    assert classify_param(param("sl2R", (0,)))["in_Inc"]
    split = enumerate_chambers(get_group("sl2R").frame("split"), (0,))[0][0]
    flags = classify_param(split)
    assert flags["in_reg"] and not flags["in_fond"] and not flags["in_I"]
    sp = param("sp4R", (0, 0), chamber=(1, -1, 1, 1))
    flags = classify_param(sp)
    assert flags["in_I"] and not flags["in_Inc"]


def test_lambda_plus_for_sl2_at_zero():
    psd = build_positive_system(param("sl2R", (0,), chamber=(1,)))
    assert psd.ell_plus == (2,)
    psd = build_positive_system(param("sl2R", (0,), chamber=(-1,)))
    assert psd.ell_plus == (-2,)


def test_lambda_plus_fixed_by_swap_on_stable_chamber():
    fr = get_group("sl2Rsq_swap").fundamental_frame
    psd = build_positive_system(param("sl2Rsq_swap", (0, 0), chamber=(1, 1)))
    assert la.mat_vec(swap_of(fr), psd.ell_plus) == psd.ell_plus


def test_descent_at_identity_keeps_roots():
    pt = param("sl2R", (0,), chamber=(1,))
    d = descend_at_e(pt, elliptic_point(pt.frame))
    assert d.labels == ["N", "N"]
    assert d.is_regular()


def test_descent_requires_fixed_point():
    pt = param("sl2Rsq_swap", (0, 0), chamber=(1, -1))
    e = elliptic_point(pt.frame, w=swap_of(pt.frame))
    with pytest.raises(NotFixed):
        descend_at_e(pt, e)


def test_sp4_counterexample_descends_to_compact_roots():
    # e with alpha_1(E) = -alpha_2(E) = i pi for the chamber whose only compact root is alpha_1 + alpha_2
    pt = param("sp4R", (0, 0), chamber=(1, -1, 1, 1))
    e = elliptic_point(pt.frame, (Fraction(1, 2), 1))
    d = descend_at_e(pt, e)
    assert classify_param(pt)["in_I"]
    assert d.labels == ["C", "C"]
    assert not d.flags()["in_Inc"] and not d.is_regular()


@pytest.mark.parametrize("group,ell,x,swap,count", [
    ("su2xsu2_swap", (2, 2), (0, 0), True, 1),
    ("gl2R", (0, Fraction(1, 3)), (Fraction(1, 3), 0), False, 2),
    ("sl2Rsq_swap", (0, 0), (Fraction(1, 3), Fraction(1, 3)), False, 4),
    ("sl2Rsq_swap", (0, 0), (Fraction(1, 2), Fraction(1, 2)), True, 1),
])
def test_fiber_count_matches_formula(group, ell, x, swap, count):
    fr = get_group(group).fundamental_frame
    e = elliptic_point(fr, x, swap_of(fr) if swap else None)
    for pt, regular in enumerate_chambers(fr, ell):
        if regular and e.fixes(pt):
            assert count_descent_fiber(pt, e) == count
            assert descent_fiber_formula(pt, e) == count


def test_fiber_count_needs_I_locus():
    pt = param("sp4R", (0, 0), chamber=(1, 1, 1, 1))
    with pytest.raises(DescentUndefined):
        count_descent_fiber(pt, elliptic_point(pt.frame))


def test_support_descriptor_sl2():
    d = support_orbits_ssInc(param("sl2R", (0,), chamber=(-1,)))
    assert d.cones == ((0, "-"),)


@settings(max_examples=25, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_chambers_transform_under_weyl(a, b):
    fr = get_group("sp4R").fundamental_frame
    for pt, regular in enumerate_chambers(fr, (a, b)):
        for w in real_weyl_group(fr, fr.entry):
            img = pt.transformed(w)
            assert img.is_regular() == regular
            assert classify_param(img) == classify_param(pt)
