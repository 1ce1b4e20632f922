import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import angle_coweight, brute_trace, param
from orbitlab import linalg as la
from orbitlab.characters import (
    candidate_taus, chi_canonical, elliptic_point, enumerate_contributions, eval_character,
    identify_orbit, is_final, orbit_key, real_roots_of_g_lambda,
)
from orbitlab.errors import Ambiguous, DegenerateInput, NoMatch, OutsideVe, SingularPoint
from orbitlab.metaplectic.stabilizer import pinned_group
from orbitlab.realform import get_group


def frame_of(group, name):
    return get_group(group).frame(name)


def limit_factor(s, phi):
    # value of the sl2R limit character on the compact torus
    return -s / (cmath.exp(1j * phi / 2) - cmath.exp(-1j * phi / 2))


def discrete_series(n, phi):
    return -math.copysign(1, n) * cmath.exp(1j * n * phi / 2) / (
        cmath.exp(1j * phi / 2) - cmath.exp(-1j * phi / 2))


def value(pt, e, X, tau=None, **kw):
    return eval_character(pt, tau or chi_canonical(pt), e, X, **kw).value


xs = st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(1, 5)])
thetas = st.floats(0.05, 1.2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), xs, thetas)
def test_su2_matches_trace(n, x, theta):
    pt = param("su2", (n,))
    e = elliptic_point(pt.frame, (x,))
    phi = 2 * math.pi * float(x) + theta
    assert value(pt, e, angle_coweight(theta)) == pytest.approx(brute_trace(n, phi), abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), xs, thetas)
def test_forms_and_sheets_agree(n, x, theta):
    pt = param("su2", (n,))
    e = elliptic_point(pt.frame, (x,))
    X = angle_coweight(theta)
    v = value(pt, e, X)
    assert value(pt, e, X, form="F+") == pytest.approx(v, abs=1e-12)
    assert value(pt, e, X, sheet=-1) == pytest.approx(v, abs=1e-12)


@pytest.mark.parametrize("n", [3, -2, 1, -5])
@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)])
def test_sl2R_discrete_series(n, x):
    pt = param("sl2R", (n,), frame="compact")
    e = elliptic_point(pt.frame, (x,))
    theta = 0.3
    phi = 2 * math.pi * float(x) + theta
    assert value(pt, e, angle_coweight(theta)) == pytest.approx(discrete_series(n, phi), abs=1e-10)


@pytest.mark.parametrize("s", [1, -1])
def test_sl2R_limit_of_discrete_series(s):
    pt = param("sl2R", (0,), frame="compact", chamber=(s,))
    e = elliptic_point(pt.frame, (Fraction(1, 3),))
    phi = 2 * math.pi / 3 + 0.3
    assert value(pt, e, angle_coweight(0.3)) == pytest.approx(limit_factor(s, phi), abs=1e-10)


@pytest.mark.parametrize("s", [1, -1])
def test_gl2R_cancellation(s):
    pt = param("gl2R", (0, Fraction(1, 3)), chamber=(s,))
    e = elliptic_point(pt.frame, (Fraction(1, 3), 0))
    ev = eval_character(pt, chi_canonical(pt), e, (0.05, 0.2))
    assert len(ev.contributions) == 2
    assert all(abs(c.summand()) > 0.5 for c in ev.contributions)
    assert abs(ev.value) < 1e-10


def test_sl2R_square_with_swap():
    pt = param("sl2Rsq_swap", (0, 0), frame="cc", chamber=(1, -1))
    e = elliptic_point(pt.frame, (Fraction(1, 3), Fraction(1, 3)))
    p1 = 2 * math.pi * (1 / 3 + 0.05)
    p2 = 2 * math.pi * (1 / 3 + 0.11)
    expected = (limit_factor(1, p1) * limit_factor(-1, p2)
                + limit_factor(-1, p1) * limit_factor(1, p2))
    ev = eval_character(pt, chi_canonical(pt), e, (0.05, 0.11))
    assert len(ev.contributions) == 2
    assert ev.value == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("x", [(Fraction(1, 3), Fraction(1, 5)), (0, 0), (Fraction(1, 2), 1)])
def test_su2_squared_induced(x):
    # ell = (2, 3): the swap exchanges the two tensor factors
    pt = param("su2xsu2_swap", (2, 3))
    e = elliptic_point(pt.frame, x)
    p1 = 2 * math.pi * (float(x[0]) + 0.05)
    p2 = 2 * math.pi * (float(x[1]) + 0.11)
    expected = brute_trace(2, p1) * brute_trace(3, p2) + brute_trace(3, p1) * brute_trace(2, p2)
    assert value(pt, e, (0.05, 0.11)) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("x", [(0, 0), (Fraction(1, 3), Fraction(1, 5)), (Fraction(1, 2), Fraction(1, 2))])
def test_su2_squared_swap_extensions(x):
    fr = frame_of("su2xsu2_swap", "compact")
    swap = next(w for w in pinned_group(fr) if w != la.identity(2))
    pt = param("su2xsu2_swap", (2, 2))
    e = elliptic_point(fr, x, swap)
    X = (0.07, 0.07)
    vals = [value(pt, e, X, tau=t) for t in candidate_taus(pt)]
    assert len(vals) == 2
    assert vals[0] == pytest.approx(-vals[1], abs=1e-12)
    # the swap on V (x) V has trace tr_V(ab)
    expected = brute_trace(2, 2 * math.pi * (float(x[0]) + float(x[1])) + 4 * math.pi * 0.07)
    assert any(abs(v - expected) < 1e-10 for v in vals)


def test_outside_Ve():
    fr = frame_of("su2xsu2_swap", "compact")
    swap = next(w for w in pinned_group(fr) if w != la.identity(2))
    pt = param("su2xsu2_swap", (2, 2))
    e = elliptic_point(fr, (0, 0), swap)
    with pytest.raises(OutsideVe):
        value(pt, e, (0.05, 0.11), tau=candidate_taus(pt)[0])


def test_singular_point():
    pt = param("su2", (2,))
    e = elliptic_point(pt.frame, (0,))
    with pytest.raises(SingularPoint):
        value(pt, e, angle_coweight(0.0))


@pytest.mark.parametrize("group,ell,frame,xs_", [
    ("gl2R", (0, Fraction(1, 3)), None, [(Fraction(1, 3), 0), (0, 0)]),
    ("sl2Rsq_swap", (0, 0), "cc", [(Fraction(1, 3), Fraction(1, 3)), (Fraction(1, 4), Fraction(1, 7))]),
    ("su2xsu2_swap", (2, 3), None, [(Fraction(1, 3), Fraction(1, 5)), (Fraction(1, 2), 1)]),
])
def test_equivariance(group, ell, frame, xs_):
    entry = get_group(group)
    fr = entry.frame(frame) if frame else entry.fundamental_frame
    rd = fr.datum
    from orbitlab.params import enumerate_chambers
    X = (0.05, 0.11)
    for pt, reg in enumerate_chambers(fr, tuple(Fraction(v) for v in ell)):
        if not reg:
            continue
        tau = chi_canonical(pt)
        for x in xs_:
            e = elliptic_point(fr, x)
            ev = eval_character(pt, tau, e, X)
            for g in pinned_group(fr):
                X2 = [float(v) for v in la.mat_vec(rd.coweight_matrix(g), [Fraction(str(v)) for v in X])]
                ev2 = eval_character(pt.transformed(g), tau.transported(g), e.conjugate(g), X2)
                assert ev2.value == pytest.approx(ev.value, abs=1e-12)

                def ms(ev):
                    return sorted((c.sign, c.ipow, str(c.trace), round(c.transform.real, 9),
                                   round(c.transform.imag, 9)) for c in ev.contributions)
                assert ms(ev) == ms(ev2)


def test_split_sl2R_finality():
    pt = param("sl2R", (0,), frame="split")
    assert real_roots_of_g_lambda(pt) == [0]
    finals = [is_final(t, pt) for t in candidate_taus(pt)]
    assert finals == [True, False]
    gammas = [t.values[("gamma", 0)].to_complex() for t in candidate_taus(pt)]
    assert gammas == pytest.approx([1, -1])


def samples_for(pt, points):
    tau = chi_canonical(pt)
    out = []
    for x, th in points:
        e = elliptic_point(pt.frame, (x,))
        X = angle_coweight(th)
        out.append((e, X, eval_character(pt, tau, e, X).value))
    return out


POINTS = [(0, 0.3), (Fraction(1, 3), 0.2), (Fraction(1, 5), -0.4), (Fraction(1, 2), 0.1)]


@pytest.mark.parametrize("group,ell,chamber", [
    ("su2", (2,), None), ("su2", (4,), None),
    ("sl2R", (0,), (1,)), ("sl2R", (0,), (-1,)), ("sl2R", (-3,), None),
])
def test_identify_roundtrip(group, ell, chamber):
    pt = param(group, ell, chamber=chamber)
    res = identify_orbit(samples_for(pt, POINTS), get_group(group))
    assert orbit_key(res.param) == orbit_key(pt)


def test_identify_ambiguous():
    pt = param("su2", (2,))
    with pytest.raises(Ambiguous):
        identify_orbit(samples_for(pt, [(0, 2 * math.pi / 3)]), get_group("su2"))


def test_identify_no_match():
    pt = param("su2", (2,))
    e = elliptic_point(pt.frame, (0,))
    with pytest.raises(NoMatch):
        identify_orbit([(e, angle_coweight(0.3), 123.0)], get_group("su2"))


GENERATOR_CASES = [
    ("su2", (3,), None, (Fraction(1, 3),), (0.1,)),
    ("sl2R", (0,), (1,), (Fraction(1, 5),), (0.1,)),
    ("sl2Rsq_swap", (0, 0), (1, -1), (Fraction(1, 3), Fraction(1, 3)), (0.05, 0.11)),
    ("su2xsu2_swap", (2, 3), None, (Fraction(1, 3), Fraction(1, 5)), (0.05, 0.11)),
    ("sp4R", (1, 1), None, (Fraction(1, 3), Fraction(1, 7)), (0.05, 0.02)),
]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GENERATOR_CASES), st.lists(st.integers(-2, 2), min_size=2, max_size=2))
def test_value_independent_of_generator(case, shift):
    # E and E + 2 pi i (coroot lattice) exponentiate to the same element
    group, ell, ch, x, X = case
    pt = param(group, ell, chamber=ch)
    tau = chi_canonical(pt)
    moved = tuple(a + 2 * k for a, k in zip(x, shift))
    a = value(pt, elliptic_point(pt.frame, x), X, tau=tau)
    b = value(pt, elliptic_point(pt.frame, moved), X, tau=tau)
    assert b == pytest.approx(a, abs=1e-12)


@pytest.mark.parametrize("group,ell,swap", [
    ("gl2R", (0, Fraction(1, 3)), False),
    ("sl2Rsq_swap", (0, 0), True),
    ("su2xsu2_swap", (2, 2), True),
    ("sp4R", (0, 0), False),
])
def test_descent_exists_in_scope(group, ell, swap):
    # with g(lambda)(i rho_F) = h every fixed parameter descends, so the existence filter never drops one
    from itertools import product
    from orbitlab.params import enumerate_chambers
    fr = get_group(group).fundamental_frame
    r = fr.datum.rank
    ws = [None] + ([next(w for w in pinned_group(fr) if w != la.identity(r))] if swap else [])
    checked = 0
    for pt, regular in enumerate_chambers(fr, ell):
        if not regular:
            continue
        for x in product([Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(1)], repeat=r):
            for w in ws:
                try:
                    items = enumerate_contributions(pt, elliptic_point(fr, x, w))
                except DegenerateInput:
                    # x must lie in t
                    continue
                checked += len(items)
                assert all(c.descent is not None for c in items)
    assert checked > 0
