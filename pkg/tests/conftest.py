import math
from fractions import Fraction

import numpy as np
import pytest

from orbitlab.params import enumerate_chambers
from orbitlab.realform import get_group


def sym_power_matrix(g, m):
    """Matrix of g acting on homogeneous polynomials of degree m in (x, y)."""
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    out = np.zeros((m + 1, m + 1), dtype=complex)
    for k in range(m + 1):
        # image of x^k y^(m-k) with x -> a x + c y, y -> b x + d y
        px = np.polynomial.polynomial.polypow([c, a], k)
        py = np.polynomial.polynomial.polypow([d, b], m - k)
        poly = np.polynomial.polynomial.polymul(px, py)
        # coefficient of x^j y^(m-j) sits at index j
        out[:len(poly), k] = poly
    return out


def su2_rotation(phi):
    return np.array([[np.exp(1j * phi / 2), 0], [0, np.exp(-1j * phi / 2)]])


def brute_trace(n, phi):
    """Trace of the n-dimensional irreducible of SU(2) at diag(e^{i phi/2}, e^{-i phi/2})."""
    return np.trace(sym_power_matrix(su2_rotation(phi), n - 1))


def param(group, ell, frame=None, chamber=None):
    entry = get_group(group)
    fr = entry.frame(frame) if frame else entry.fundamental_frame
    pts = enumerate_chambers(fr, tuple(Fraction(v) for v in ell))
    if chamber is None:
        return pts[0][0]
    return next(p for p, _ in pts if p.Fplus == tuple(chamber))


def angle_coweight(theta):
    """Coweight of su2 / sl2R on which the root takes i theta."""
    return (theta / (2 * math.pi),)


@pytest.fixture
def su2_frame():
    return get_group("su2").fundamental_frame


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for line in RESULTS:
            terminalreporter.write_line(line)
