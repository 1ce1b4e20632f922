"""Character values at e exp X from the orbit-sum formula.

For an elliptic point e and a small X in g(e) the normalized character
k_e(X) tr T(e exp X) is a finite sum over the parameters
lambda~' = u lambda~ fixed by e, grouped by their descent to g(e):

    D_e^{-1/2} sum_classes |{a'*+}|^{-1}
        (sum_inner  sign(e'^) i^{-d} tr tau(e'^)) * beta^(descent)(X)

where e' = u^{-1} e u, e'^ is a lift of e' to the stabilizer cover and
sign(e'^) compares the orientation of e'^ with the canonical form.  The
second form sums over the images u lambda_+ with orientations taken
against lambda_+ and the global power i^{-d_e}.

Scope: parameters on frames where g(lambda)(i rho_F) is the Cartan
itself, and centralizers g(e) whose roots form a product of rank-one
systems (the groups with calibrated orbit transforms).
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import linalg as la
from .errors import (Ambiguous, DegenerateInput, MissingGeneratorValue, NoMatch,
                     NoStableChamber, NotFixed, NotIntegral, OutsideVe, SingularPoint,
                     UnsupportedStabilizer)
from .metaplectic.core import LiftGenerator, orientation_of_lift
from .metaplectic.cyclotomic import Cyclo
from .metaplectic.stabilizer import (LiftedElliptic, elliptic_planes, gamma_alpha_data,
                                     normal_form, orientation_sign, pinned_group)
from .orbits.transform import RankOneFactor, factor_limit_transform, reflection_of
from .params import (EllipticPoint, ParamTilde, build_positive_system, descend_at_e,
                     enumerate_chambers, g_e_roots, is_integral_regG, m_roots, vanishes)
from .realform.catalog import _close, real_weyl_group

# a lift of an elliptic point to the stabilizer cover; iota is (identity, sheet -1)
EllipticPointLift = LiftedElliptic


def elliptic_point(frame, x=None, w=None, name=""):
    rd = frame.datum
    return EllipticPoint(frame, x if x is not None else (0,) * rd.rank, w, name)


# tau data

@dataclass(eq=False)
class TauChar:
    """A one-dimensional tau: exp-lifts act by e^{i lambda}, iota by -1.

    ``values`` holds the traces on the remaining generators: ("w", matrix)
    for the window lift of a frame automorphism and ("gamma", root) for
    the window lift of gamma_alpha.
    """

    frame: object
    ell: tuple
    values: dict = field(default_factory=dict)
    dim: int = 1
    name: str = "canonical"

    def __post_init__(self):
        self.ell = la.frac_vec(self.ell)
        self.values.setdefault("iota", Cyclo.rational(-self.dim))

    def trace(self, lift):
        p = lift.point
        if p.is_torus():
            base = Cyclo.expi(la.dot(self.ell, p.x))
        else:
            key = ("w", p.w)
            if key not in self.values:
                raise MissingGeneratorValue(f"no value of tau on the lift of {p.w}")
            base = self.values[key] * Cyclo.expi(la.dot(self.ell, normal_form(p)))
        return base * lift.sheet

    def transported(self, g):
        """The character g . tau on the stabilizer of g . lambda~."""
        gi = la.inverse(g)
        rd = self.frame.datum
        perm = rd.perm_of_matrix(g)
        vals = {}
        for k, v in self.values.items():
            if k == "iota":
                continue
            if k[0] == "w":
                vals[("w", la.mat_mul(la.mat_mul(g, k[1]), gi))] = v
            else:
                vals[("gamma", perm[k[1]])] = v
        return TauChar(self.frame, la.mat_vec(g, self.ell), vals, self.dim, self.name)

    def __repr__(self):
        extra = {(k if k == "iota" else k[0]): str(v) for k, v in self.values.items()}
        return f"TauChar({self.name}, ell={[str(v) for v in self.ell]}, {extra})"


def chi_canonical(pt, psd=None):
    """The character of the identity-component cover with differential lambda."""
    psd = psd or build_positive_system(pt)
    if not is_integral_regG(pt, psd.Rplus_g_h):
        raise NotIntegral(f"{pt!r} is not integral for G")
    return TauChar(pt.frame, pt.lam.ell)


def real_roots_of_g_lambda(pt):
    rd = pt.frame.datum
    return [i for i in range(rd.npos)
            if pt.frame.labels[i] == "R" and vanishes(rd, pt.lam, i)]


def _roots_of_unity_solutions(k, target):
    """All z with z^k = target, target = +-1."""
    off = 0 if target == 1 else 1
    return [Cyclo.expi(Fraction(2 * j + off, k)) for j in range(k)]


def _lift_power_sign(point, ell, k):
    """Sheet of the k-th power of the base lift of a finite-order point."""
    planes = elliptic_planes(point, ell)
    gen = LiftGenerator(tuple((k * p.generator, 1) for p in planes))
    return orientation_of_lift(gen)


def stabilizer_generators(pt, psd):
    """Generators of the stabilizer cover beyond the identity component.

    Returns (key, order, sign of the order-th power) for each frame
    automorphism fixing lambda~ and each gamma_alpha of a real root of g(lambda).
    """
    frame = pt.frame
    rd = frame.datum
    ident = la.identity(rd.rank)
    out = []
    for w in pinned_group(frame):
        if w == ident:
            continue
        p = elliptic_point(frame, w=w)
        if not p.fixes(pt):
            continue
        k = 1
        acc = w
        while acc != ident:
            acc = la.mat_mul(w, acc)
            k += 1
        out.append((("w", w), k, _lift_power_sign(p, psd.ell_plus, k)))
    for a in real_roots_of_g_lambda(pt):
        ga = gamma_alpha_data(frame, psd, a)
        out.append((("gamma", a), 2, -1 if ga.square_is_iota else 1))
    return out


def candidate_taus(pt, psd=None):
    """All one-dimensional tau+ on the stabilizer cover with differential lambda."""
    psd = psd or build_positive_system(pt)
    base = chi_canonical(pt, psd)
    out = [base]
    for key, k, sign in stabilizer_generators(pt, psd):
        nxt = []
        for tau in out:
            for z in _roots_of_unity_solutions(k, sign):
                vals = dict(tau.values)
                vals[key] = z
                nxt.append(TauChar(tau.frame, tau.ell, vals, 1, "candidate"))
        out = nxt
    for n, tau in enumerate(out):
        if len(out) > 1:
            tau.name = f"candidate{n}"
    return out


def is_final(tau_plus, pt, psd=None):
    """(delta tau+)(gamma_alpha) avoids (-1)^{n_alpha} for every real root of g(lambda)."""
    psd = psd or build_positive_system(pt)
    frame = pt.frame
    for a in real_roots_of_g_lambda(pt):
        key = ("gamma", a)
        if key not in tau_plus.values:
            raise MissingGeneratorValue(f"tau has no value at gamma_{a}")
        ga = gamma_alpha_data(frame, psd, a)
        if ga.deltas[0] * tau_plus.values[key] == Cyclo.rational((-1) ** ga.n_alpha):
            return False
    return True


# k_e and D_e

def _orbit_eigen_angles(point):
    """For each e-orbit of root lines: (orbit, [angles/pi of Ad e, mod 2])."""
    rd = point.frame.datum
    out = []
    x = point.x
    for orb in point.orbits():
        m = len(orb)
        s = sum((la.dot(rd.roots[i], x) for i in orb), Fraction(0))
        out.append((orb, [(s + 2 * k) / m % 2 for k in range(m)]))
    return out


def _cartan_angles(point):
    """Angles/pi of the eigenvalues of w on the Cartan."""
    if point.is_torus():
        return []
    m = np.array([[float(v) for v in row] for row in point.w])
    ang = np.angle(np.linalg.eigvals(m)) / math.pi
    return [float(a) % 2 for a in ang]


def _root_value(frame, i, xi_t, xi_a):
    """alpha_i(X) for X = i pi xi_t + xi_a."""
    r = frame.datum.roots[i]
    return complex(float(la.dot(r, xi_a)), math.pi * float(la.dot(r, xi_t)))


def _split(frame, xi):
    xi = tuple(Fraction(v) if not isinstance(v, float) else v for v in xi)
    st = la.transpose(frame.sigma)
    sx = tuple(sum(st[i][j] * xi[j] for j in range(len(xi))) for i in range(len(xi)))
    return (tuple((a - b) / 2 for a, b in zip(xi, sx)),
            tuple((a + b) / 2 for a, b in zip(xi, sx)))


@dataclass
class KDFactors:
    k_e: float
    D_e: float
    d_e: int
    d_e_lambda: int
    eps_e: float
    X_in_Ve: bool
    regular: bool


def k_and_D_factors(e, X, pt=None):
    """k_e(X), D_e, d_e, d_{e,lambda~}, eps_e and the V_e and regularity tests."""
    frame = e.frame
    rd = frame.datum
    xt, xa = _split(frame, X)
    if not e.is_torus():
        cw = rd.coweight_matrix(e.w)
        if any(abs(float(a) - float(b)) > 1e-12 for a, b in zip(la.mat_vec(cw, X), X)):
            raise OutsideVe("X is not fixed by the automorphism part of e")
    D, moved = 1.0, 0
    angles = []
    kprod = complex(1.0)
    regular = True
    for orb, angs in _orbit_eigen_angles(e):
        z = _root_value(frame, orb[0], xt, xa)
        for a in angs:
            if a == 0:
                # line of g(e): contributes to the sinh-factor
                if abs(z) > 0:
                    kprod *= cmath.sinh(z / 2) / (z / 2)
                else:
                    regular = False
                continue
            angles.append(a)
            moved += 1
            zeta = cmath.exp(1j * math.pi * float(a))
            D *= abs(1 - zeta)
            kprod *= (1 - zeta * cmath.exp(z)) / (1 - zeta)
            if abs(1 - zeta * cmath.exp(z)) < 1e-12:
                regular = False
    angles += [a for a in _cartan_angles(e) if a > 1e-12]
    if kprod.real <= 0 or abs(kprod.imag) > 1e-9 * max(1.0, abs(kprod)):
        k_e = float("nan")
    else:
        k_e = math.sqrt(kprod.real)
    red = [min(float(a), 2 - float(a)) for a in angles if float(a) % 2]
    eps = math.pi * min(red) if red else 2 * math.pi
    im = max((abs(_root_value(frame, i, xt, xa).imag) for i in range(len(rd.roots))),
             default=0.0)
    d_lam = moved // 2
    if pt is not None:
        inner = set(m_roots(pt))
        d_m = sum(1 for orb, angs in _orbit_eigen_angles(e) if orb[0] in inner
                  for a in angs if a != 0) // 2
        d_lam -= d_m
    return KDFactors(k_e, D, moved // 2, d_lam, eps, im < eps, regular)


# contributions

@dataclass
class Contribution:
    param: ParamTilde          # lambda~' = u lambda~
    conjugator: tuple          # u
    point: EllipticPoint       # e' = u^{-1} e u
    descent: object            # DescentResult of lambda~' at e, or None
    descent_key: tuple = None
    orbit: int = -1            # index of the G(e)-class of the descent
    counted: bool = False      # descent equals the class representative
    sign: int = 0
    ipow: int = 0              # d in i^{-d}
    trace: object = None
    transform: complex = 0j

    def summand(self):
        return self.sign * (1j) ** (-self.ipow) * self.trace.to_complex() * self.transform


def _descent_key(d):
    pt = d.param
    return (pt.lam.ell, tuple(sorted(tuple(d.roots[k]) for k in d.positive)))


def _commutes_with(v, e):
    """v e v^{-1} = e for some representative of the weight matrix v.

    Representatives differ by torus elements, which move the coweight
    of e by (1 - w) t; the rest must lie in 2 * kernel lattice.
    """
    frame = e.frame
    rd = frame.datum
    vi = la.inverse(v)
    if la.mat_mul(la.mat_mul(v, e.w), vi) != e.w:
        return False
    diff = la.sub(la.mat_vec(rd.coweight_matrix(v), e.x), e.x)
    cw = rd.coweight_matrix(e.w)
    moved = [la.sub(b, la.mat_vec(cw, b)) for b in frame.t_basis]
    moved = [m for m in moved if not la.is_zero(m)]
    return _in_even_kernel(frame, diff, moved)


def _in_even_kernel(frame, v, free=(), reach=4):
    """v in 2 * kernel lattice + span(free)."""
    basis = [la.frac_vec(z) for z in frame.kernel_lattice]
    for coeffs in product(range(-reach, reach + 1), repeat=len(basis)):
        r = v
        for c, z in zip(coeffs, basis):
            r = la.sub(r, la.scale(2 * c, z))
        if la.is_zero(r) or (free and la.in_span(list(free), r)):
            return True
    return False


def centralizer_weyl(e):
    """Elements of W(G,h) commuting with e."""
    frame = e.frame
    return [v for v in real_weyl_group(frame, frame.entry) if _commutes_with(v, e)]


def enumerate_contributions(pt, e, psd=None):
    """All lambda~' = u lambda~ fixed by e, with conjugated points and descents.

    Items are grouped into G(e)-classes of descents; within a class only
    those whose descent equals the class representative are ``counted``.
    """
    frame = pt.frame
    weyl = real_weyl_group(frame, frame.entry)
    items, seen = [], set()
    for u in weyl:
        ptu = pt.transformed(u)
        if ptu.key() in seen:
            continue
        seen.add(ptu.key())
        if not e.fixes(ptu):
            continue
        e1 = e.conjugate(la.inverse(u))
        try:
            d = descend_at_e(ptu, e)
        except (NoStableChamber, NotFixed):
            d = None
        items.append(Contribution(ptu, u, e1, d))
    items.sort(key=lambda c: (c.param.lam.ell, c.param.positive))
    we = centralizer_weyl(e)
    reps = []
    for c in items:
        if c.descent is None:
            continue
        c.descent_key = _descent_key(c.descent)
        for n, (rep_key, rep_images) in enumerate(reps):
            if c.descent_key in rep_images:
                c.orbit = n
                c.counted = c.descent_key == rep_key
                break
        else:
            images = set()
            for v in we:
                try:
                    images.add(_descent_key(descend_at_e(c.param.transformed(v), e)))
                except (NoStableChamber, NotFixed):
                    pass
            reps.append((c.descent_key, images))
            c.orbit = len(reps) - 1
            c.counted = True
    return items


def _descended_factors(d):
    """Rank-one factors of g(e) from a descent (one per pair of restricted roots)."""
    frame = d.param.frame
    rd = frame.datum
    out, keep = [], []
    for k, (vec, lab, orb) in enumerate(zip(d.roots, d.labels, d.orbits)):
        if la.scale(-1, vec) in keep:
            continue
        keep.append(vec)
        cor = (Fraction(0),) * rd.rank
        for i in orb:
            cor = la.add(cor, rd.coroots[i])
        out.append(RankOneFactor(tuple(vec), cor, lab))
    return out


def descended_transform(c, X, store=None):
    """Transform on g(e) of the G(e)-orbit of the descent of lambda~'."""
    d = c.descent
    if not d.is_regular():
        return 0j
    e = d.point
    pt = d.param
    frame = pt.frame
    psd = build_positive_system(pt)
    direction = la.sub(psd.ell_plus, pt.lam.ell)
    factors = _descended_factors(d)
    if any(f.label == "X" for f in factors):
        raise UnsupportedStabilizer("g(e) has complex roots")
    weyl = centralizer_weyl(e)
    rd = frame.datum
    refl = [reflection_of(f) for f in factors if f.label in "CR"]
    weyl0 = _close(refl, rd.rank)
    return factor_limit_transform(frame, factors, pt.lam.ell, direction, X,
                                  weyl, weyl0, store)


def _a_chamber_count(c):
    """Number of chambers of (g(e)(lambda')(i rho), a'_e); only the trivial case is handled."""
    d = c.descent
    frame = d.param.frame
    rho = d.param.rho_F
    rd = frame.datum
    for k in d.lam_roots:
        vec = d.roots[k]
        if rd.inner(rho, vec) == 0 and not la.is_zero(frame.weight_a(vec)):
            raise UnsupportedStabilizer("restricted roots on a'_e are not handled")
    return 1


# evaluation

@dataclass
class CharacterEval:
    value: complex              # tr T(e exp X)
    value_e: complex            # k_e(X) tr T(e exp X)
    contributions: list
    factors: dict
    form: str = "F"


def _check_scope(pt):
    if m_roots(pt):
        raise UnsupportedStabilizer("g(lambda)(i rho_F) is larger than the Cartan")


def eval_character(pt, tau, e, X, form="F", sheet=1, psd=None, store=None):
    """tr T_{lambda~, tau}(e exp X) by the orbit-sum formula.

    form "F" sums over lambda~' with orientations against lambda_can;
    form "F+" sums over lambda_+' with orientations against lambda_+.
    ``sheet`` picks the lift of every e' (the result does not depend on it).
    """
    _check_scope(pt)
    psd = psd or build_positive_system(pt)
    kd = k_and_D_factors(e, X, pt)
    if not kd.X_in_Ve:
        raise OutsideVe("X is outside V_e")
    if not kd.regular:
        raise SingularPoint("e exp X is not regular")
    items = enumerate_contributions(pt, e, psd)
    if form == "F":
        ref, ipow = psd.ell_can, kd.d_e_lambda
    elif form == "F+":
        ref, ipow = psd.ell_plus, kd.d_e
        # lambda_+' are distinct images u lambda_+ (no larger stabilizer in scope)
        plus = {}
        for c in items:
            key = la.mat_vec(c.conjugator, psd.ell_plus)
            plus.setdefault(key, c)
        items = [c for c in items if plus[la.mat_vec(c.conjugator, psd.ell_plus)] is c]
    else:
        raise DegenerateInput(f"unknown form {form!r}")
    cache = {}
    total = 0j
    used = []
    for c in items:
        if not c.counted:
            continue
        lift = LiftedElliptic(c.point, sheet)
        c.sign = orientation_sign(lift, ref)
        c.ipow = ipow
        c.trace = tau.trace(lift)
        if c.orbit not in cache:
            cache[c.orbit] = descended_transform(c, X, store) / _a_chamber_count(c)
        c.transform = cache[c.orbit]
        total += c.summand()
        used.append(c)
    value_e = total / math.sqrt(kd.D_e)
    factors = {"k_e": kd.k_e, "D_e": kd.D_e, "d_e": kd.d_e, "d_e_lambda": kd.d_e_lambda,
               "eps_e": kd.eps_e, "a_chambers": 1}
    return CharacterEval(value_e / kd.k_e, value_e, used, factors, form)


# parameter recovery

@dataclass
class Identified:
    param: ParamTilde
    tau: TauChar
    traces: list      # tr tau at the base lift of each sample point
    candidates: int


def orbit_key(pt):
    frame = pt.frame
    return min((tuple(str(v) for v in q.lam.ell), q.positive)
               for q in (pt.transformed(u) for u in real_weyl_group(frame, frame.entry)))


def catalog_parameters(entry, bound=8):
    """Integral regular parameters with integer semisimple coordinates up to ``bound``
    on the fundamental frame, one per W(G,h)-orbit, with the canonical tau."""
    frame = entry.fundamental_frame
    rd = frame.datum
    ss = rd.rank_ss
    out, seen = [], set()
    for coords in product(range(-bound, bound + 1), repeat=ss):
        ell = tuple(Fraction(c) for c in coords) + (Fraction(0),) * (rd.rank - ss)
        for pt, regular in enumerate_chambers(frame, ell):
            if not regular:
                continue
            k = orbit_key(pt)
            if k in seen:
                continue
            seen.add(k)
            try:
                if m_roots(pt):
                    continue
                tau = chi_canonical(pt)
            except (NotIntegral, DegenerateInput):
                continue
            out.append((pt, tau))
    return out


def identify_orbit(samples, entry, bound=8, tol=1e-6, candidates=None):
    """The unique catalog parameter orbit whose character matches all samples.

    samples: list of (EllipticPoint, X, value).
    """
    if candidates is None:
        candidates = catalog_parameters(entry, bound)
    matches = []
    for pt, tau in candidates:
        ok = True
        for e, X, value in samples:
            pe = e if e.frame is pt.frame else EllipticPoint(pt.frame, e.x, e.w, e.name)
            try:
                v = eval_character(pt, tau, pe, X).value
            except (OutsideVe, SingularPoint):
                raise
            except Exception:
                ok = False
                break
            if abs(v - value) > tol:
                ok = False
                break
        if ok:
            matches.append((pt, tau))
    if not matches:
        raise NoMatch("no catalog parameter reproduces the samples")
    if len(matches) > 1:
        raise Ambiguous(f"{len(matches)} parameters reproduce the samples")
    pt, tau = matches[0]
    traces = [tau.trace(LiftedElliptic(e, 1)) for e, _, _ in samples]
    return Identified(pt, tau, traces, len(candidates))
