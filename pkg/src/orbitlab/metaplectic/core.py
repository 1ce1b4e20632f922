"""Orientations and cover functions on a real symplectic space.

All angles are rational multiples of pi and are stored as the rational
multiplier (so 1 means pi).  A semisimple symplectic map x is described
by its elliptic part x_e, given as rotation angles on B-positive planes,
and by its non-elliptic eigenvalues.  A lift of x_e to the double cover
is given by unreduced rotation angles of a generator, one per plane.

Conventions.  On a plane with basis (w1, w2), Rot(a) is the matrix
[[0, -a], [a, 0]], so exp(Rot(a)) turns w1 towards w2 by a.  The plane
is B-positive when B(w1, w2) > 0.  A generator written Rot(-theta) in a
symplectic basis has theta as its angle in the (-2pi, 0] window.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from ..errors import (DegenerateInput, InconsistentSignature, MalformedGenerator,
                      NonSemisimple, ZeroAngle)
from .cyclotomic import Cyclo, CycloQuotient, sign_sin_half


def reduce_window(t):
    """Representative of t mod 2 in the window (-2, 0]."""
    t = Fraction(t) % 2
    return t - 2 if t else Fraction(0)


def rational_sqrt(r):
    r = Fraction(r)
    if r < 0:
        raise DegenerateInput(f"negative value {r} has no real square root")
    n, d = isqrt(r.numerator), isqrt(r.denominator)
    if n * n != r.numerator or d * d != r.denominator:
        raise DegenerateInput(f"{r} is not the square of a rational")
    return Fraction(n, d)


@dataclass(frozen=True)
class EllipticSymplecticData:
    """A semisimple element x of Sp(V).

    blocks: (theta, count) pairs; x acts on `count` planes as a rotation
    by theta*pi and is elliptic there.
    hyper_eigen: (r, theta, count) with r > 0, r != 1.  For theta in
    {0, 1} this is a plane with eigenvalues r e^{i pi theta} and its
    inverse.  Otherwise it is a 4-space with eigenvalues r^{+-1}
    e^{+-i pi theta}; its elliptic part rotates two B-positive planes
    by theta and -theta.
    B_orientation_ref: one sign per entry of `blocks`, the sign of B on
    the basis in which that block's angle is written (default +1).
    """

    blocks: tuple = ()
    hyper_eigen: tuple = ()
    B_orientation_ref: tuple = None

    def __post_init__(self):
        blocks = tuple((Fraction(t), int(c)) for t, c in self.blocks)
        hyper = tuple((Fraction(r), Fraction(t), int(c)) for r, t, c in self.hyper_eigen)
        for _, c in blocks:
            if c < 0:
                raise DegenerateInput("negative block count")
        for r, t, c in hyper:
            if r <= 0 or r == 1 or c < 0:
                raise NonSemisimple(f"bad hyperbolic eigenvalue modulus {r}")
        ref = self.B_orientation_ref
        ref = tuple(1 for _ in blocks) if ref is None else tuple(int(s) for s in ref)
        if len(ref) != len(blocks) or any(s not in (1, -1) for s in ref):
            raise DegenerateInput("B_orientation_ref needs one sign per block")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "hyper_eigen", hyper)
        object.__setattr__(self, "B_orientation_ref", ref)

    def planes(self):
        """(angle, B-sign) for every plane of the elliptic part, in order."""
        out = []
        for (t, c), s in zip(self.blocks, self.B_orientation_ref):
            out += [(t, s)] * c
        for r, t, c in self.hyper_eigen:
            if t % 1 == 0:
                out += [(t % 2, 1)] * c
            else:
                out += [(t, 1), (-t, 1)] * c
        return out

    @property
    def dim(self):
        return 2 * len(self.planes())

    def eigenvalues(self):
        """Eigenvalues of x on V_C as (modulus, angle) pairs."""
        out = []
        for t, c in self.blocks:
            out += [(Fraction(1), t), (Fraction(1), -t)] * c
        for r, t, c in self.hyper_eigen:
            if t % 1 == 0:
                out += [(r, t), (1 / r, t)] * c
            else:
                out += [(r, t), (r, -t), (1 / r, t), (1 / r, -t)] * c
        return out

    def moved_dim(self):
        """Half the dimension of (1 - x_e)V."""
        return sum(1 for t, _ in self.planes() if t % 2)


@dataclass(frozen=True)
class LiftGenerator:
    """Unreduced rotation angles of a generator A, one (angle, count) run per plane."""

    unreduced_angles: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "unreduced_angles",
                           tuple((Fraction(a), int(c)) for a, c in self.unreduced_angles))

    def expanded(self):
        out = []
        for a, c in self.unreduced_angles:
            if c < 0:
                raise MalformedGenerator("negative count")
            out += [a] * c
        return out


@dataclass(frozen=True)
class LagrangianSignature:
    """Signature data of an x-stable lagrangian L.

    eigen_sig lists (angle of z, p_z, q_z) for the eigenvalues z of x_e
    on L; q_L is the number of negative squares of h on (1 - x)L.
    """

    n_L: int
    q_L: int
    eigen_sig: tuple = ()

    def __post_init__(self):
        if self.n_L < 0 or self.q_L < 0:
            raise InconsistentSignature("negative counts")
        object.__setattr__(self, "eigen_sig",
                           tuple((Fraction(t), int(p), int(q)) for t, p, q in self.eigen_sig))

    def q_elliptic(self):
        """q_L(x_e): negative squares on (1 - x_e)L."""
        return sum(q for t, _, q in self.eigen_sig if t % 2)


def orientation_of_lift(A):
    """Sign of the orientation O(exp A) relative to the rotation basis of A."""
    sign = 1
    for a in A.expanded():
        if a % 2 == 0:
            if a:
                sign *= -1 if (a / 2) % 2 else 1
        else:
            sign *= sign_sin_half(a)
    return sign


def orientation_of_inf(betas):
    sign = 1
    for b in betas:
        b = Fraction(b)
        if b == 0:
            raise ZeroAngle("zero rotation angle")
        sign *= 1 if b > 0 else -1
    return sign


def canonical_lift(data):
    return LiftGenerator(tuple((reduce_window(t), 1) for t, _ in data.planes()))


def _checked_lift(data, lift):
    planes = data.planes()
    if lift is None:
        return canonical_lift(data).expanded(), planes
    angles = lift.expanded()
    if len(angles) != len(planes):
        raise MalformedGenerator(f"generator has {len(angles)} planes, expected {len(planes)}")
    for a, (t, s) in zip(angles, planes):
        if (a - t) % 2:
            raise MalformedGenerator(f"angle {a} does not lift {t} mod 2")
    return angles, planes


def orientation_ratio(data, lift=None, sheet=1):
    """O(x_e-hat) / O(B) on (1 - x_e)V for the lift exp(A), times sheet."""
    if sheet not in (1, -1):
        raise MalformedGenerator("sheet must be +1 or -1")
    angles, planes = _checked_lift(data, lift)
    sign = sheet * orientation_of_lift(LiftGenerator(tuple((a, 1) for a in angles)))
    for a, (_, s) in zip(angles, planes):
        if a % 2:
            sign *= s
    return sign


def delta_fn(data, lift=None, sheet=1):
    """delta = orientation ratio times prod e^{i theta_k / 2}, theta_k in (-2pi, 0]."""
    value = Cyclo.rational(orientation_ratio(data, lift, sheet))
    for t, s in data.planes():
        value = value * Cyclo.expi(reduce_window(-t * s) / 2)
    return value


def half_det_modulus(data):
    """|det(1 - x) on (1 - x)V|^{1/2} as an exact cyclotomic number."""
    m = Cyclo.rational(1)
    for t, c in data.blocks:
        if t % 2:
            sg = sign_sin_half(t)
            m = m * ((Cyclo.expi(t / 2) - Cyclo.expi(-t / 2)) * Cyclo(4, {3: sg})) ** c
    for r, t, c in data.hyper_eigen:
        if t % 1 == 0:
            lam = r if t % 2 == 0 else -r
            m = m * (abs(1 - lam) / rational_sqrt(r)) ** c
        else:
            z = Cyclo.expi(t) * r
            m = m * ((1 - z) * (1 - z.conj()) * (1 / r)) ** c
    return m


def phi_fn(data, lift=None, sheet=1):
    """Phi = ratio * i^{-d} * |det(1 - x)|^{-1/2}, d = dim(1 - x_e)V / 2."""
    ratio = orientation_ratio(data, lift, sheet)
    num = Cyclo.i() ** (-data.moved_dim()) * ratio
    return CycloQuotient(num, half_det_modulus(data))


def rho_lagrangian(data, L, eigen_on_L, lift=None, sheet=1):
    """rho_L for an x-stable lagrangian L.

    eigen_on_L: (r, theta) for each eigenvalue r e^{i pi theta} of x on L,
    with multiplicity.
    """
    if 2 * len(eigen_on_L) != data.dim:
        raise InconsistentSignature("L must have half the dimension of V")
    # h may be degenerate on real isotropic eigenvectors, so p + q <= dim
    if sum(p + q for _, p, q in L.eigen_sig) > len(eigen_on_L):
        raise InconsistentSignature("eigenspace signatures exceed dim L")
    value = Cyclo.rational((-1) ** L.q_elliptic() * orientation_ratio(data, lift, sheet))
    for r, t in eigen_on_L:
        value = value * rational_sqrt(r) * Cyclo.expi(reduce_window(t) / 2)
    return value


def rho_modulus(eigen_on_L):
    out = Fraction(1)
    for r, _ in eigen_on_L:
        out *= rational_sqrt(r)
    return out


def det_one_minus_on_L(eigen_on_L):
    """det(1 - x) restricted to (1 - x)L."""
    out = Cyclo.rational(1)
    for r, t in eigen_on_L:
        if not (r == 1 and t % 2 == 0):
            out = out * (1 - Cyclo.expi(t) * r)
    return out


def check_phi_identity(data, L, eigen_on_L, lift=None, sheet=1):
    """Phi == (-1)^{n_L + q_L} rho_L det(1 - x)|_{(1-x)L}^{-1}, exactly."""
    phi = phi_fn(data, lift, sheet)
    rho = rho_lagrangian(data, L, eigen_on_L, lift, sheet)
    rhs = CycloQuotient(rho * (-1) ** (L.n_L + L.q_L), det_one_minus_on_L(eigen_on_L))
    return phi == rhs


def check_phase_identity(data, L, eigen_on_L, lift=None, sheet=1):
    """rho_L / |rho_L| == delta * prod z^{q_z}, exactly."""
    rho = rho_lagrangian(data, L, eigen_on_L, lift, sheet)
    rhs = delta_fn(data, lift, sheet) * rho_modulus(eigen_on_L)
    for t, _, q in L.eigen_sig:
        rhs = rhs * Cyclo.expi(t * q)
    return rho == rhs
