"""Fourier transforms of regular coadjoint orbits as chamber-wise exponential sums.

Supported groups are those whose roots on the relevant Cartan form a
product of rank-one systems.  For X real in a Cartan subalgebra, written
as a coweight xi with X = i pi xi_t + xi_a, a root takes the value
alpha(X) = i pi <alpha, xi_t> + <alpha, xi_a> and the form takes
lambda(X) = pi <mu, xi_t> + <nu, xi_a>.  The transform of the orbit
through a regular lambda is

    sum_w c_w e^{i w lambda(X)} / prod_{alpha > 0} alpha(X)

with c_w read from the calibration store per rank-one factor.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .. import linalg as la
from ..errors import DegenerateInput, MissingCalibration, SingularX
from ..params import LinearFormSS, build_positive_system
from ..realform.catalog import _close, real_weyl_group
from .calibration import load_store


@dataclass(frozen=True)
class RankOneFactor:
    root: tuple      # weight
    coroot: tuple    # coweight with <root, coroot> = 2
    label: str       # label on the frame carrying lambda


@dataclass
class OrbitTransform:
    frame: object
    chamber_of_X: tuple
    chamber_of_lambda: tuple
    coeffs: dict     # tuple of per-factor Weyl indices -> complex
    normalization_provenance: str = "calibrated"


def rank_one_factors(frame):
    """Positive roots as rank-one factors; fails unless they are strongly orthogonal."""
    rd = frame.datum
    pos = list(range(rd.npos))
    for i in pos:
        for j in pos:
            if i != j and (la.add(rd.roots[i], rd.roots[j]) in rd.index
                           or la.sub(rd.roots[i], rd.roots[j]) in rd.index
                           or la.dot(rd.roots[i], rd.coroots[j]) != 0):
                raise MissingCalibration(f"{frame!r}: roots are not a product of rank-one systems")
    return [RankOneFactor(rd.roots[i], rd.coroots[i], frame.labels[i]) for i in pos]


def _imag(label):
    return label in "CN"


def factor_key(lam_label, x_label):
    return f"A1:{lam_label}|{x_label}"


def _factor_coords(f, x_label, lam, xi_t, xi_a):
    """(n, theta-or-u) for one factor."""
    if f.label == "R":
        n = la.dot(lam.nu, f.coroot)
    else:
        n = la.dot(lam.mu, f.coroot)
    if _imag(x_label):
        z = math.pi * float(la.dot(f.root, xi_t))
    else:
        z = float(la.dot(f.root, xi_a))
    return n, z


def _sign(v):
    return 1 if v > 0 else -1


def split_coweight(frame, xi):
    xi = tuple(Fraction(v) if not isinstance(v, float) else v for v in xi)
    st = la.transpose(frame.sigma)
    sx = tuple(sum(st[i][j] * xi[j] for j in range(len(xi))) for i in range(len(xi)))
    xt = tuple((a - b) / 2 for a, b in zip(xi, sx))
    xa = tuple((a + b) / 2 for a, b in zip(xi, sx))
    return xt, xa


def _dotf(u, v):
    return sum(float(a) * float(b) for a, b in zip(u, v))


def exp_sum_transform(factors, x_labels, lam, lam_frame, xi_t, xi_a, store=None,
                      chamber_override=None):
    """Evaluate the exponential sum; returns (value, OrbitTransform).

    factors carry their labels on the frame of lambda; x_labels are the
    labels of the same roots on the frame of X.  chamber_override gives
    the lambda chamber signs to use when lambda itself is singular (limits).
    """
    store = store or load_store()
    same_frame = all(f.label == x for f, x in zip(factors, x_labels))
    if same_frame:
        total = math.pi * _dotf(lam.mu, xi_t) + _dotf(lam.nu, xi_a)
    else:
        total = 0.0
    value = complex(1.0)
    coeffs = {}
    chX, chL = [], []
    per = []
    for k, (f, xl) in enumerate(zip(factors, x_labels)):
        n, z = _factor_coords(f, xl, lam, xi_t, xi_a)
        if z == 0:
            raise SingularX("X is singular for a root")
        if chamber_override is not None:
            sl = chamber_override[k]
        else:
            if n == 0:
                raise DegenerateInput("lambda is singular on a root")
            sl = _sign(n)
        sx = _sign(z)
        key = factor_key(f.label, xl)
        if key.endswith("|R"):
            raise MissingCalibration(f"{key}: transforms at hyperbolic X are not calibrated")
        c1, cs = store.coeffs(key, sx, sl)
        # Weyl constraint: the opposite chamber pair carries the negated table
        c1m, csm = store.coeffs(key, -sx, -sl)
        if abs(c1 + c1m) > 1e-12 or abs(cs + csm) > 1e-12:
            raise MissingCalibration(f"{key}: stored table violates the Weyl constraint")
        chX.append(sx)
        chL.append(sl)
        n = float(n)
        if same_frame:
            num = c1 + cs * cmath.exp(-1j * n * z)
        else:
            # lambda transported by a Cayley transform: its pairing picks up a factor i
            num = c1 * cmath.exp(1j * (1j * n) * z / 2) + cs * cmath.exp(-1j * (1j * n) * z / 2)
        den = 1j * z if _imag(xl) else z
        per.append((c1, cs))
        value *= num / den
    for ws in product((0, 1), repeat=len(factors)):
        c = complex(1.0)
        for w, (c1, cs) in zip(ws, per):
            c *= c1 if w == 0 else cs
        coeffs[ws] = c
    value *= cmath.exp(1j * total)
    return value, OrbitTransform(None, tuple(chX), tuple(chL), coeffs)


def _component_images(frame, ell_list):
    """Distinct identity-component orbits among the images under component automorphisms."""
    entry = frame.entry
    w0 = real_weyl_group(frame, entry, connected_only=True)
    comps = [la.identity(frame.datum.rank)]
    if entry is not None:
        for a in entry.automorphisms:
            dst, m = a.maps.get(frame.name, (None, None))
            if dst == frame.name:
                comps.append(m)
    comps = _close(comps, frame.datum.rank)
    seen, out = [], []
    for g in comps:
        imgs = tuple(la.mat_vec(g, v) for v in ell_list)
        orbit = {tuple(la.mat_vec(w, v) for v in imgs) for w in w0}
        if any(o in orbit for o in seen):
            continue
        seen.append(imgs)
        out.append(g)
    return out


def orbit_fourier_transform(frame, lam, X, scale=1.0, X_frame=None, store=None,
                            connected_only=False):
    """Transform of the G-orbit of a regular lambda at scale * X.

    X is a coweight on X_frame (default: the frame of lambda).  For a
    non-connected group the orbit is the union of identity-component
    orbits and the transform is their sum.
    """
    if not isinstance(lam, LinearFormSS):
        lam = LinearFormSS.from_weight(frame, lam)
    X_frame = X_frame or frame
    xi = tuple(scale * float(v) if scale != 1.0 else v for v in X)
    xt, xa = split_coweight(X_frame, xi)
    factors = rank_one_factors(frame)
    rd = frame.datum
    x_labels = [X_frame.labels[rd.index[f.root]] for f in factors]
    comps = [la.identity(rd.rank)] if connected_only else _component_images(frame, [lam.ell])
    total = 0j
    for g in comps:
        lg = LinearFormSS.from_weight(frame, la.mat_vec(g, lam.ell))
        v, _ = exp_sum_transform(factors, x_labels, lg, frame, xt, xa, store)
        total += v
    return total


def orbit_transform_data(frame, lam, X, X_frame=None, store=None):
    if not isinstance(lam, LinearFormSS):
        lam = LinearFormSS.from_weight(frame, lam)
    X_frame = X_frame or frame
    xt, xa = split_coweight(X_frame, X)
    factors = rank_one_factors(frame)
    rd = frame.datum
    x_labels = [X_frame.labels[rd.index[f.root]] for f in factors]
    _, ot = exp_sum_transform(factors, x_labels, lam, frame, xt, xa, store)
    ot.frame = frame
    return ot


def lambda_t(psd, t):
    """ell_t = ell + t (ell_+ - ell)."""
    ell = psd.param.lam.ell
    return la.add(ell, la.scale(Fraction(t), la.sub(psd.ell_plus, ell)))


def _stab_count(weyl, vecs):
    return sum(1 for w in weyl if all(la.mat_vec(w, v) == v for v in vecs))


def check_rank_one(factors):
    """Fail unless the factors pair trivially with each other's coroots."""
    for i, f in enumerate(factors):
        if la.dot(f.root, f.coroot) != 2:
            raise DegenerateInput("factor coroot does not pair to 2")
        for j, g in enumerate(factors):
            if i != j and la.dot(f.root, g.coroot) != 0:
                raise MissingCalibration("roots are not a product of rank-one systems")


def reflection_of(f):
    """Weight matrix of the reflection attached to a rank-one factor."""
    r = len(f.root)
    return tuple(tuple(Fraction(int(p == q)) - f.root[p] * f.coroot[q] for q in range(r))
                 for p in range(r))


def factor_limit_transform(frame, factors, ell, direction, X, weyl, weyl0,
                           store=None, X_frame=None):
    """Limit as t -> 0+ of the transform of the orbit through ell + t * direction.

    The orbit is taken for a group with roots ``factors`` (rank-one, on
    the frame of ell), Weyl group ``weyl`` and identity-component Weyl
    group ``weyl0``, both as weight matrices.  The stabilizer ratio
    |W(ell_t)| / |W(ell + direction)| is included.
    """
    check_rank_one(factors)
    X_frame = X_frame or frame
    rd = frame.datum
    ell = la.frac_vec(ell)
    d = la.frac_vec(direction)
    ratio = Fraction(_stab_count(weyl, [ell, d]), _stab_count(weyl, [la.add(ell, d)]))
    x_labels = [X_frame.labels[rd.index[f.root]] if f.root in rd.index else f.label
                for f in factors]
    xt, xa = split_coweight(X_frame, X)
    def chamber(lg, dg):
        signs = []
        for f in factors:
            a, b = la.dot(lg, f.coroot), la.dot(dg, f.coroot)
            if a == 0 and b == 0:
                raise DegenerateInput("lambda_t is singular")
            signs.append(_sign(a) if a != 0 else _sign(b))
        return tuple(signs)

    # identity-component orbits are told apart by ell and the chamber on the factors
    seen, total = [], 0j
    for g in weyl:
        lg, dg = la.mat_vec(g, ell), la.mat_vec(g, d)
        orbit = {(la.mat_vec(w, lg), chamber(la.mat_vec(w, lg), la.mat_vec(w, dg)))
                 for w in weyl0}
        if any(o in orbit for o in seen):
            continue
        signs = chamber(lg, dg)
        seen.append((lg, signs))
        lam_g = LinearFormSS.from_weight(frame, lg)
        v, _ = exp_sum_transform(factors, x_labels, lam_g, frame, xt, xa, store,
                                 chamber_override=signs)
        total += v
    return float(ratio) * total


def limit_transform(pt, X, psd=None, store=None, X_frame=None):
    """Limit as t -> 0+ of |W(lambda_t)|/|W(lambda_+)| times the transform at lambda_t."""
    if not pt.is_regular():
        return 0j
    frame = pt.frame
    psd = psd or build_positive_system(pt)
    d = la.sub(psd.ell_plus, pt.lam.ell)
    weyl = real_weyl_group(frame, frame.entry)
    weyl0 = real_weyl_group(frame, frame.entry, connected_only=True)
    return factor_limit_transform(frame, rank_one_factors(frame), pt.lam.ell, d, X,
                                  weyl, weyl0, store, X_frame)


def transform_at_t(pt, X, t, psd=None, store=None, X_frame=None):
    """|W(lambda_t)|/|W(lambda_+)| times the transform of the orbit through lambda_t."""
    frame = pt.frame
    psd = psd or build_positive_system(pt)
    ell_t = lambda_t(psd, t)
    weyl = real_weyl_group(frame, frame.entry)
    ratio = Fraction(_stab_count(weyl, [ell_t]), _stab_count(weyl, [psd.ell_plus]))
    return float(ratio) * orbit_fourier_transform(frame, ell_t, X, X_frame=X_frame, store=store)
