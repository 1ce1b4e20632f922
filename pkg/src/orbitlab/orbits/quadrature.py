"""Numerical orbit integrals on explicit 2x2 matrix models.

Each orbit O = Ad*(G) f_Y0 with f_Y(Z) = c tr(Y Z) is parametrized by
g(u, v) = exp(u U/2) exp(v V/2).  The Liouville density is computed
pointwise from the Kirillov form f([A_u, A_v]) with A_u, A_v the right
logarithmic derivatives of g, and the Fourier transform is
(2 pi)^{-1} int e^{i f(X)} omega.

Oscillatory integrals over non-compact orbits are evaluated on a
deformed contour in the non-compact variable, which is the Abel-summed
value of the integral.

This module is the calibration oracle and is independent of the
exponential-sum code it calibrates.
"""

import numpy as np

# sl(2,R) basis and the compact generator of su(2)
K = np.array([[0.0, 1.0], [-1.0, 0.0]])
P = np.array([[1.0, 0.0], [0.0, -1.0]])
Q = np.array([[0.0, 1.0], [1.0, 0.0]])
T = np.array([[1j, 0.0], [0.0, -1j]])
A = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def _rot(gen, t):
    """exp(t gen / 2) for gen with gen^2 = -1 or +1, batched over t."""
    t = np.asarray(t, dtype=complex)
    sq = (gen @ gen)[0, 0].real
    ident = np.eye(2)
    if sq < 0:
        c, s = np.cos(t / 2), np.sin(t / 2)
    else:
        c, s = np.cosh(t / 2), np.sinh(t / 2)
    return c[..., None, None] * ident + s[..., None, None] * gen


def _inv2(m):
    a, b, c, d = m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1]
    det = a * d - b * c
    out = np.empty_like(m)
    out[..., 0, 0], out[..., 0, 1] = d / det, -b / det
    out[..., 1, 0], out[..., 1, 1] = -c / det, a / det
    return out


def _tr(a, b):
    return np.einsum("...ij,...ji->...", a, b)


def _orbit_integrand(coef, Y0, U, V, u, v, X):
    """e^{i f(X)} and the Kirillov density at g(u, v), with f_Y(Z) = coef tr(Y Z)."""
    gu = _rot(U, u)
    gv = _rot(V, v)
    g = gu @ gv
    Y = g @ Y0 @ _inv2(g)
    Au = np.broadcast_to(U / 2, Y.shape)
    Av = gu @ (V / 2) @ _inv2(gu)
    br = Au @ Av - Av @ Au
    omega = coef * _tr(Y, br)
    phase = np.exp(1j * coef * _tr(Y, np.broadcast_to(X, Y.shape)))
    return phase, omega


def _gauss(a, b, n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def _composite_gauss(a, b, pieces, n):
    xs, ws = [], []
    edges = np.linspace(a, b, pieces + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = _gauss(lo, hi, n)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def sphere_transform(n, X, n_phi=160, n_psi=120):
    """Orbit of f(Z) = -(n/2) tr(T Z) in su(2); X a 2x2 anti-hermitian traceless matrix."""
    phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    psi, wpsi = _gauss(0.0, np.pi, n_psi)
    PHI, PSI = np.meshgrid(phi, psi, indexing="ij")
    phase, omega = _orbit_integrand(-n / 2, T, T, A, PHI, PSI, X)
    dens = np.abs(omega.real)
    vals = phase * dens * wpsi[None, :]
    return vals.sum() * (2 * np.pi / n_phi) / (2 * np.pi)


def elliptic_sheet_transform(n, X, n_phi=128, s_max=None, pieces=60, n_gauss=24):
    """Orbit of f(Z) = -(n/2) tr(K Z) in sl(2,R) at an elliptic X.

    The radial variable runs over the contour 0 -> i eta -> i eta + s_max.
    """
    a = -(n / 2) * np.trace(K @ X).real   # f_{K}(X): sign picks the decaying side
    eta = 0.5 if a > 0 else -0.5
    mag = max(abs(a), 1e-3)
    if s_max is None:
        s_max = np.arcsinh(80.0 / (mag * np.sin(abs(eta)) * 0.25)) + 2.0
    phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    vt, vw = _gauss(0.0, eta, 40)
    st, sw = _composite_gauss(0.0, s_max, pieces, n_gauss)
    path = np.concatenate([1j * vt, st + 1j * eta])
    dpath = np.concatenate([1j * vw, sw.astype(complex)])
    # orientation of omega fixed at a real point
    ref = _orbit_integrand(-n / 2, K, K, P, np.array([0.3]), np.array([0.7]), X)[1][0].real
    sgn = 1.0 if ref > 0 else -1.0
    PHI, S = np.meshgrid(phi, path, indexing="ij")
    phase, omega = _orbit_integrand(-n / 2, K, K, P, PHI, S, X)
    vals = phase * omega * sgn * dpath[None, :]
    return vals.sum() * (2 * np.pi / n_phi) / (2 * np.pi)


def hyperbolic_orbit_transform(n, X, n_phi=128, s_max=None, pieces=80, n_gauss=24):
    """Orbit of f(Z) = (n/2) tr(P Z) in sl(2,R) at an elliptic X, on the line Im s = eta."""
    a = (n / 2) * np.trace(K @ X).real
    eta = 0.4 if a < 0 else -0.4
    mag = max(abs(a), 1e-3)
    if s_max is None:
        s_max = np.arcsinh(80.0 / (mag * np.sin(abs(eta)) * 0.25)) + 2.0
    phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    st, sw = _composite_gauss(-s_max, s_max, pieces, n_gauss)
    path = st + 1j * eta
    ref = _orbit_integrand(n / 2, P, K, Q, np.array([0.3]), np.array([0.7]), X)[1][0].real
    sgn = 1.0 if ref > 0 else -1.0
    PHI, S = np.meshgrid(phi, path, indexing="ij")
    phase, omega = _orbit_integrand(n / 2, P, K, Q, PHI, S, X)
    vals = phase * omega * sgn * sw[None, :]
    return vals.sum() * (2 * np.pi / n_phi) / (2 * np.pi)


def conjugate(X, g):
    return g @ X @ np.linalg.inv(g)


def model_X(kind, theta, rng=None):
    """X in the model with alpha(X) = i theta, optionally conjugated at random."""
    if kind == "su2":
        X = (theta / 2) * T
        if rng is not None:
            a, b = rng.uniform(0, 2 * np.pi, 2)
            g = _rot(T, a) @ _rot(A, b)
            X = conjugate(X, g)
        return X
    X = (theta / 2) * K
    if rng is not None:
        a, b = rng.uniform(0, 2 * np.pi), rng.uniform(-0.8, 0.8)
        g = _rot(K, a) @ _rot(P, b)
        X = conjugate(X, g).real
    return X


ORACLES = {
    # key: (model kind, integrator)
    "A1:C|C": ("su2", sphere_transform),
    "A1:N|N": ("sl2R", elliptic_sheet_transform),
    "A1:R|N": ("sl2R", hyperbolic_orbit_transform),
}


def oracle_value(key, n, theta, rng=None):
    kind, fn = ORACLES[key]
    return complex(fn(float(n), model_X(kind, float(theta), rng)))
