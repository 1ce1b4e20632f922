"""Cover functions on the stabilizer of lambda_+ acting on g/h.

An elliptic point e = w exp(E) of a frame acts on g/h.  Its rotation
planes are built from the root lines: an e-orbit O of root lines of
length m whose phases sum to s gives eigenvalues e^{i pi (s + 2k)/m}.
For imaginary roots the planes that are positive for B_ell = ell([., .])
carry the eigenvectors on which h(u, v) = i B(u, conj v) is negative;
for complex roots each quadruple {O, -O, sO, -sO} contributes the angles
of O and their negatives; for real roots the angles are 2k/m.

The lift of e used as the base point (sheet +1) is
  * for torus elements, exp of the generator with unreduced angles
    taken from E itself (the exponential lift);
  * for w exp(E) with w a frame automorphism, the product of the window
    lift of w and the exponential lift of the w-invariant part of E,
    after conjugating E into that part.
"""

from dataclasses import dataclass
from fractions import Fraction

from .. import linalg as la
from ..errors import (DegenerateInput, NotInStabilizer, NotRealRoot,
                      UnsupportedStabilizer)
from ..params import EllipticPoint
from ..realform.catalog import _close
from .core import (EllipticSymplecticData, LagrangianSignature, LiftGenerator,
                   delta_fn, orientation_of_lift, orientation_ratio, reduce_window, rho_lagrangian)
from .cyclotomic import Cyclo


@dataclass(frozen=True)
class Plane:
    angle: Fraction      # rotation angle on a B-positive plane, mod 2
    generator: Fraction  # unreduced angle of the base lift
    kind: str            # 'imaginary', 'complex' or 'real'


@dataclass(eq=False)
class LiftedElliptic:
    """A point of the cover over e: the base lift times iota if sheet is -1."""

    point: EllipticPoint
    sheet: int = 1

    def __post_init__(self):
        if self.sheet not in (1, -1):
            raise DegenerateInput("sheet must be +1 or -1")

    def flipped(self):
        return LiftedElliptic(self.point, -self.sheet)

    def conjugate(self, g):
        return LiftedElliptic(self.point.conjugate(g), self.sheet)

    def __repr__(self):
        return f"LiftedElliptic({self.point.name or 'e'}, x={[str(v) for v in self.point.x]}, sheet={self.sheet:+d})"


def iota(frame):
    rd = frame.datum
    return LiftedElliptic(EllipticPoint(frame, (0,) * rd.rank, name="iota"), -1)


def identity_lift(frame):
    rd = frame.datum
    return LiftedElliptic(EllipticPoint(frame, (0,) * rd.rank, name="1"), 1)


def pinned_group(frame):
    """Matrices generated by the component automorphisms preserving the frame."""
    entry = frame.entry
    gens = []
    if entry is not None:
        for a in entry.automorphisms:
            dst, m = a.maps.get(frame.name, (None, None))
            if dst == frame.name:
                gens.append(m)
    return _close(gens, frame.datum.rank)


def _order(w, r):
    ident = la.identity(r)
    p, k = w, 1
    while p != ident:
        p = la.mat_mul(w, p)
        k += 1
        if k > 64:
            raise UnsupportedStabilizer("automorphism of infinite order")
    return k


def normal_form(point):
    """Coweight of the w-invariant part of E (E itself for torus points)."""
    if point.is_torus():
        return point.x
    frame = point.frame
    rd = frame.datum
    if point.w not in pinned_group(frame):
        raise UnsupportedStabilizer("non-torus part is not a frame automorphism")
    c = rd.coweight_matrix(point.w)
    k = _order(point.w, rd.rank)
    acc, v = point.x, point.x
    for _ in range(k - 1):
        v = la.mat_vec(c, v)
        acc = la.add(acc, v)
    return la.scale(Fraction(1, k), acc)


def _orbits(perm, n):
    seen, out = set(), []
    for i in range(n):
        if i in seen:
            continue
        orb, j = [], i
        while j not in orb:
            orb.append(j)
            j = perm[j]
        seen.update(orb)
        out.append(tuple(orb))
    return out


def _c(label):
    return 1 if label == "C" else -1


def _planes_from_phases(frame, perm, phase, ell, base_angle):
    """Planes for an element permuting root lines by perm with the given phases.

    base_angle(k, m) is the angle contributed by the permutation on the
    k-th eigenvector of an orbit of length m.
    """
    rd = frame.datum
    n = len(rd.roots)
    orbits = _orbits(perm, n)
    where = {i: orb for orb in orbits for i in orb}
    sig = frame.sigma_perm
    planes, done = [], set()
    for orb in orbits:
        if orb in done:
            continue
        m = len(orb)
        lab = frame.labels[orb[0]]
        a = phase(orb[0])
        if any(phase(i) != a for i in orb):
            raise DegenerateInput("phases not constant along an orbit")
        if lab in "CN":
            signs = set()
            for i in orb:
                v = _c(frame.labels[i]) * la.dot(ell, rd.coroots[i])
                if v == 0:
                    raise DegenerateInput("form is singular on an imaginary root")
                signs.add(v > 0)
            if len(signs) > 1:
                raise NotInStabilizer("e mixes the two sides of an imaginary root")
            neg = where[rd.neg(orb[0])]
            done.update({orb, neg})
            if not signs.pop():
                orb = neg
                a = phase(orb[0])
            for k in range(m):
                w = base_angle(k, m)
                planes.append(Plane((a + w) % 2, a + reduce_window(w), "imaginary"))
        elif lab == "X":
            neg = where[rd.neg(orb[0])]
            sorb = where[sig[orb[0]]]
            nsorb = where[rd.neg(sig[orb[0]])]
            cls = {orb, neg, sorb, nsorb}
            if len(cls) != 4:
                raise UnsupportedStabilizer("complex root orbit meets its conjugates")
            done.update(cls)
            for k in range(m):
                w = base_angle(k, m)
                planes.append(Plane((a + w) % 2, a + reduce_window(w), "complex"))
                planes.append(Plane((-a - w) % 2, -a + reduce_window(-w), "complex"))
        else:
            neg = where[rd.neg(orb[0])]
            if neg == orb:
                raise UnsupportedStabilizer("real root orbit contains its negative")
            if m > 2:
                raise UnsupportedStabilizer("real root orbit longer than 2")
            done.update({orb, neg})
            for k in range(m):
                w = base_angle(k, m)
                planes.append(Plane((a + w) % 2, a + reduce_window(w), "real"))
    return planes


def _pinned_angle(k, m):
    return Fraction(2 * k, m)


def elliptic_planes(point, ell):
    """B_ell-positive planes of Ad e on g/h, with the base-lift generator angles."""
    frame = point.frame
    rd = frame.datum
    ell = la.frac_vec(ell)
    if la.mat_vec(point.w, ell) != ell:
        raise NotInStabilizer("e does not fix the form")
    x = normal_form(point)

    def phase(i):
        return la.dot(rd.roots[i], x)

    return _planes_from_phases(frame, point.perm, phase, ell, _pinned_angle)


def symplectic_data(planes):
    data = EllipticSymplecticData(tuple((p.angle, 1) for p in planes))
    gen = LiftGenerator(tuple((p.generator, 1) for p in planes))
    return data, gen


def orientation_sign(lift, ell):
    """O(e-hat) / O(B_ell) on (1 - Ad e)(g/h)."""
    data, gen = symplectic_data(elliptic_planes(lift.point, ell))
    return orientation_ratio(data, gen, lift.sheet)


def delta_on_cover(lift, ell):
    data, gen = symplectic_data(elliptic_planes(lift.point, ell))
    return delta_fn(data, gen, lift.sheet)


def _stable(perm, subset, what):
    subset = frozenset(subset)
    if frozenset(perm[i] for i in subset) != subset:
        raise NotInStabilizer(f"e does not preserve {what}")


def rho_on_stabilizer_cover(lift, psd, frame=None):
    """Cover character on the stabilizer of lambda_+: the orbit-product formula.

    delta(e-hat) * det(Ad e) on the compact positive root lines
    * prod over e-orbits O of complex classes {b, -sb} in g(nu_+) of (-1)^{m_O - 1} u_O.
    """
    point = lift.point
    frame = frame or point.frame
    rd = frame.datum
    perm = point.perm
    value = delta_on_cover(lift, psd.ell_plus)

    compact = [i for i in psd.Rplus_g_h if frame.labels[i] == "C"]
    _stable(perm, compact, "the compact positive roots")
    idx = {i: k for k, i in enumerate(sorted(compact))}
    value = value * _perm_sign([idx[perm[i]] for i in sorted(compact)])
    for i in compact:
        value = value * Cyclo.expi(point.phase(i))

    sig = frame.sigma_perm
    classes = {}
    for b in psd.Rplus_g_nu_plus:
        if frame.labels[b] == "X":
            c = frozenset({b, rd.neg(sig[b])})
            classes[c] = b
    seen = set()
    for c, b in sorted(classes.items(), key=lambda kv: min(kv[0])):
        if c in seen:
            continue
        orbit, cur = [], c
        while cur not in orbit:
            orbit.append(cur)
            cur = frozenset(perm[i] for i in cur)
            if cur not in classes:
                raise NotInStabilizer("e does not preserve the complex classes of g(nu_+)")
        seen.update(orbit)
        m = len(orbit)
        j, u = b, Cyclo.rational(1)
        for _ in range(m):
            u = u * Cyclo.expi(point.phase(j))
            j = perm[j]
        if j != b:
            raise UnsupportedStabilizer("e^m exchanges the two members of a complex class")
        value = value * (-1) ** (m - 1) * u
    return value


def _perm_sign(p):
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, n = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            n += 1
        if n % 2 == 0:
            sign = -sign
    return sign


def lagrangian_data(point, psd, frame=None):
    """Signature and eigenvalues of Ad e on L = sum of the positive root lines of Rplus_g_h."""
    frame = frame or point.frame
    rd = frame.datum
    perm = point.perm
    rplus = frozenset(psd.Rplus_g_h)
    _stable(perm, rplus, "the positive system of g/h")
    x = normal_form(point)
    ell = psd.ell_plus
    sig = frame.sigma_perm
    orbits = [o for o in _orbits(perm, len(rd.roots)) if o[0] in rplus]
    where = {i: o for o in orbits for i in o}
    eigen, eigen_sig, counted = [], [], set()
    for orb in orbits:
        m = len(orb)
        a = la.dot(rd.roots[orb[0]], x)
        angles = [(a + Fraction(2 * k, m)) for k in range(m)]
        eigen += [(Fraction(1), t) for t in angles]
        lab = frame.labels[orb[0]]
        if lab in "CN":
            neg = _c(lab) * la.dot(ell, rd.coroots[orb[0]]) > 0
            eigen_sig += [(t, 0, 1) if neg else (t, 1, 0) for t in angles]
        elif lab == "X":
            partner = rd.neg(sig[orb[0]])
            if partner in rplus:
                other = where[partner]
                if other == orb:
                    raise UnsupportedStabilizer("complex orbit equals its partner")
                first = orb not in counted
                counted.update({orb, other})
                eigen_sig += [(t, 0, 1) if first else (t, 1, 0) for t in angles]
            else:
                eigen_sig += [(t, 0, 0) for t in angles]
        else:
            eigen_sig += [(t, 0, 0) for t in angles]
    return LagrangianSignature(0, sum(q for t, _, q in eigen_sig if t % 2), eigen_sig), eigen


def rho_via_lagrangian(lift, psd, frame=None):
    """The same cover character from the lagrangian of positive root lines."""
    planes = elliptic_planes(lift.point, psd.ell_plus)
    data, gen = symplectic_data(planes)
    L, eigen = lagrangian_data(lift.point, psd, frame)
    return rho_lagrangian(data, L, eigen, gen, lift.sheet)


# real roots

@dataclass(eq=False)
class GammaAlpha:
    alpha: int
    n_alpha: int
    coweight: tuple          # alpha coroot; Ad gamma acts on g^b by (-1)^{<b, coroot>}
    planes: list
    lifts: tuple             # (generator, sheet) for the window lift and its iota-translate
    deltas: tuple            # delta_{lambda_+} on the two lifts
    square_is_iota: bool     # the window lift squares to iota


def n_alpha(frame, alpha):
    """Half the sum of <b, H_alpha> over roots b with b + sigma b a positive multiple of alpha."""
    rd = frame.datum
    a = rd.roots[alpha]
    total = Fraction(0)
    for b in range(len(rd.roots)):
        s = la.add(rd.roots[b], rd.roots[frame.sigma_perm[b]])
        if la.is_zero(s):
            continue
        k = next(j for j, v in enumerate(a) if v != 0)
        t = s[k] / a[k]
        if t > 0 and la.scale(t, a) == s:
            total += la.dot(rd.roots[b], rd.coroots[alpha])
    if (total / 2).denominator != 1:
        raise DegenerateInput("n_alpha is not an integer")
    return int(total / 2)


def gamma_alpha_data(frame, psd, alpha):
    rd = frame.datum
    if frame.labels[alpha] != "R":
        raise NotRealRoot(f"root {alpha} is labelled {frame.labels[alpha]}")
    cow = rd.coroots[alpha]

    def phase(i):
        return Fraction(la.dot(rd.roots[i], cow))

    ident = list(range(len(rd.roots)))
    planes = _planes_from_phases(frame, ident, phase, psd.ell_plus, lambda k, m: Fraction(0))
    planes = [Plane(p.angle, reduce_window(p.angle), p.kind) for p in planes]
    data, gen = symplectic_data(planes)
    double = LiftGenerator(tuple((2 * p.generator, 1) for p in planes))
    return GammaAlpha(
        alpha, n_alpha(frame, alpha), cow, planes,
        ((gen, 1), (gen, -1)),
        (delta_fn(data, gen, 1), delta_fn(data, gen, -1)),
        orientation_of_lift(double) == -1,
    )
