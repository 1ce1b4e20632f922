"""Parameters (lambda, F+) on a Cartan frame and their positive systems.

A linear form is a rational weight ``ell`` split by the frame into
``mu = (ell - S ell)/2`` (the elliptic part, standing for i*mu) and
``nu = (ell + S ell)/2`` (the hyperbolic part).  For a root alpha,

    lambda(H_alpha) = -i <mu, H_alpha> + <nu, H_alpha>,

so lambda vanishes on H_alpha iff both pairings vanish.  Chambers are
sign vectors on the positive imaginary roots of g(lambda), each carried
with a rational witness point.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg as la
from .errors import (DegenerateInput, DescentUndefined, NoStableChamber, NotAChamber,
                     NotFixed, UnsupportedStabilizer)
from .realform.catalog import _close, real_weyl_group


def _pair(rd, w, i):
    return la.dot(w, rd.coroots[i])


def weight_basis(frame, sign):
    """Basis of {w : S w = sign * w} on weights."""
    s = frame.sigma
    r = frame.datum.rank
    m = [[s[i][j] - sign * int(i == j) for j in range(r)] for i in range(r)]
    return la.nullspace(m, r)


@dataclass(frozen=True)
class LinearFormSS:
    mu: tuple
    nu: tuple

    @classmethod
    def from_weight(cls, frame, ell):
        ell = la.frac_vec(ell)
        if len(ell) != frame.datum.rank:
            raise DegenerateInput(f"weight has {len(ell)} coordinates, expected {frame.datum.rank}")
        return cls(frame.weight_t(ell), frame.weight_a(ell))

    @property
    def ell(self):
        return la.add(self.mu, self.nu)

    def check_on(self, frame):
        s = frame.sigma
        if la.mat_vec(s, self.mu) != la.scale(-1, self.mu) or la.mat_vec(s, self.nu) != self.nu:
            raise DegenerateInput("form does not split along this frame")


def vanishes(rd, lam, i):
    return _pair(rd, lam.mu, i) == 0 and _pair(rd, lam.nu, i) == 0


def g_lambda_roots(frame, lam):
    rd = frame.datum
    return [i for i in range(len(rd.roots)) if vanishes(rd, lam, i)]


def imaginary_roots_of(frame, lam):
    """Positive imaginary roots of g(lambda)."""
    rd = frame.datum
    return [i for i in frame.roots_with("CN", positive_only=True) if _pair(rd, lam.mu, i) == 0]


def simple_of(rd, positive):
    """Indecomposable elements of a positive system given as a set of root indices."""
    pos = set(positive)
    out = []
    for i in sorted(pos):
        decomposable = False
        for j in pos:
            k = rd.index.get(la.sub(rd.roots[i], rd.roots[j]))
            if k is not None and k in pos:
                decomposable = True
                break
        if not decomposable:
            out.append(i)
    return out


@dataclass(eq=False)
class ParamTilde:
    frame: object
    lam: LinearFormSS
    Fplus: tuple            # signs on imag_roots
    imag_roots: tuple = ()  # positive imaginary roots of g(lambda), sorted
    witness: tuple = None   # weight strictly positive on F+

    def __post_init__(self):
        self.lam.check_on(self.frame)
        rd = self.frame.datum
        if not self.imag_roots:
            self.imag_roots = tuple(imaginary_roots_of(self.frame, self.lam))
        self.Fplus = tuple(int(s) for s in self.Fplus)
        if len(self.Fplus) != len(self.imag_roots) or any(s not in (1, -1) for s in self.Fplus):
            raise NotAChamber("sign vector does not match the imaginary roots of g(lambda)")
        if self.witness is None:
            match = [c for c in _chamber_witnesses(self.frame, self.lam)
                     if c[0] == self.Fplus]
            if not match:
                raise NotAChamber(f"signs {self.Fplus} are not realized by a chamber")
            self.witness = match[0][1]
        for i, s in zip(self.imag_roots, self.Fplus):
            if s * _pair(rd, self.witness, i) <= 0:
                raise NotAChamber("witness does not realize the sign vector")

    @property
    def positive(self):
        """Root indices of F+ (imaginary roots of g(lambda) positive on the chamber)."""
        rd = self.frame.datum
        return tuple(sorted(i if s > 0 else rd.neg(i) for i, s in zip(self.imag_roots, self.Fplus)))

    @property
    def rho_F(self):
        return self.frame.datum.half_sum(self.positive)

    def simple_roots(self):
        return simple_of(self.frame.datum, self.positive)

    def is_regular(self):
        return all(self.frame.labels[i] == "N" for i in self.simple_roots())

    def transformed(self, m, frame=None):
        """Image under a weight matrix m preserving (or mapping onto) the frame."""
        frame = frame or self.frame
        rd = frame.datum
        lam = LinearFormSS(la.mat_vec(m, self.lam.mu), la.mat_vec(m, self.lam.nu))
        wit = la.mat_vec(m, self.witness)
        imag = imaginary_roots_of(frame, lam)
        signs = tuple(1 if _pair(rd, wit, i) > 0 else -1 for i in imag)
        return ParamTilde(frame, lam, signs, tuple(imag), wit)

    def key(self):
        return (self.frame.name, self.lam.ell, self.positive)

    def __repr__(self):
        signs = "".join("+" if s > 0 else "-" for s in self.Fplus)
        return f"ParamTilde({self.frame!r}, ell={[str(x) for x in self.lam.ell]}, F+={signs or '.'})"


def _imag_weyl(frame, lam):
    rd = frame.datum
    return _close([rd.reflection_matrix(i) for i in imaginary_roots_of(frame, lam)], rd.rank)


def _chamber_witnesses(frame, lam):
    rd = frame.datum
    imag = imaginary_roots_of(frame, lam)
    base = rd.half_sum(imag)
    seen = {}
    for w in _imag_weyl(frame, lam):
        p = la.mat_vec(w, base)
        signs = tuple(1 if _pair(rd, p, i) > 0 else -1 for i in imag)
        seen.setdefault(signs, p)
    return sorted(seen.items(), key=lambda kv: tuple(-s for s in kv[0]))


def enumerate_chambers(frame, lam):
    """All chambers of the imaginary roots of g(lambda), with their regular flag."""
    if not isinstance(lam, LinearFormSS):
        lam = LinearFormSS.from_weight(frame, lam)
    imag = tuple(imaginary_roots_of(frame, lam))
    out = []
    for signs, wit in _chamber_witnesses(frame, lam):
        pt = ParamTilde(frame, lam, signs, imag, wit)
        out.append((pt, pt.is_regular()))
    return out


# positive systems

def m_roots(pt):
    """Roots of g(lambda)(i rho_F): vanish on lambda and on rho_F."""
    rd = pt.frame.datum
    rho = pt.rho_F
    return [i for i in g_lambda_roots(pt.frame, pt.lam) if _pair(rd, rho, i) == 0]


def enumerate_a_chambers(pt, grid=4):
    """Chambers of (g(lambda)(i rho_F), a) as (sign vector on positive m-roots, witness)."""
    rd = pt.frame.datum
    roots = [i for i in m_roots(pt) if i < rd.npos]
    if not roots:
        return [((), (Fraction(0),) * rd.rank)]
    basis = weight_basis(pt.frame, 1)
    seen = {}
    for coeffs in product(range(-grid, grid + 1), repeat=len(basis)):
        p = (Fraction(0),) * rd.rank
        for c, b in zip(coeffs, basis):
            p = la.add(p, la.scale(c, b))
        vals = [_pair(rd, p, i) for i in roots]
        if any(v == 0 for v in vals):
            continue
        signs = tuple(1 if v > 0 else -1 for v in vals)
        seen.setdefault(signs, p)
    return sorted(seen.items(), key=lambda kv: tuple(-s for s in kv[0]))


def _as_positive_set(rd, idx, signs):
    return frozenset(i if s > 0 else rd.neg(i) for i, s in zip(idx, signs))


def is_positive_system(rd, subset, within=None):
    """Exactly one of +-alpha from `within` and closed under addition inside it."""
    within = set(range(len(rd.roots))) if within is None else set(within)
    subset = set(subset)
    for i in within:
        if (i in subset) == (rd.neg(i) in subset):
            return False
    for i in subset:
        for j in subset:
            k = rd.index.get(la.add(rd.roots[i], rd.roots[j]))
            if k is not None and k in within and k not in subset:
                return False
    return True


def choose_epsilon(rd, nu, rho_prime):
    """Half the least positive t with a(nu + t rho') = nu + t rho' for some a moving nu."""
    ts = []
    for a in rd.automorphism_group():
        d1 = la.sub(la.mat_vec(a, nu), nu)
        d2 = la.sub(la.mat_vec(a, rho_prime), rho_prime)
        if la.is_zero(d1) or la.is_zero(d2):
            continue
        # need d1 + t d2 = 0
        k = next(j for j, v in enumerate(d2) if v != 0)
        t = -d1[k] / d2[k]
        if t > 0 and la.add(d1, la.scale(t, d2)) == (Fraction(0),) * rd.rank:
            ts.append(t)
    return min(ts) / 2 if ts else Fraction(1)


@dataclass(eq=False)
class PositiveSystemData:
    param: object
    epsilon: Fraction
    nu_plus: tuple
    mu_plus: tuple
    lambda_plus: LinearFormSS
    lambda_can: LinearFormSS
    rho_F: tuple
    rho_can: tuple
    rho_prime: tuple
    Rplus_g_h: frozenset
    Rplus_g_nu_plus: frozenset
    Rplus_lambdatilde: frozenset
    Rplus_lambdatilde_aplus: frozenset
    Rplus_m: frozenset
    a_chamber: tuple
    a_witness: tuple

    @property
    def frame(self):
        return self.param.frame

    @property
    def rho_g_h(self):
        return self.frame.datum.half_sum(sorted(self.Rplus_g_h))

    @property
    def ell_plus(self):
        return self.lambda_plus.ell

    @property
    def ell_can(self):
        return self.lambda_can.ell


def build_positive_system(pt, a_chamber=None, epsilon=None):
    frame = pt.frame
    rd = frame.datum
    mu, nu = pt.lam.mu, pt.lam.nu
    chambers = enumerate_a_chambers(pt)
    if a_chamber is None:
        a_chamber, a_wit = chambers[0]
    else:
        a_chamber = tuple(int(s) for s in a_chamber)
        match = [w for s, w in chambers if s == a_chamber]
        if not match:
            raise NotAChamber(f"{a_chamber} is not a chamber of (g(lambda)(i rho_F), a)")
        a_wit = match[0]
    mpos = [i for i in m_roots(pt) if i < rd.npos]
    Rm = _as_positive_set(rd, mpos, a_chamber)
    rho_prime = rd.half_sum(sorted(Rm))
    rho_F = pt.rho_F
    if epsilon is None:
        epsilon = choose_epsilon(rd, nu, rho_prime)
    nu_plus = la.add(nu, la.scale(epsilon, rho_prime))
    all_idx = range(len(rd.roots))

    def pr(w, i):
        return _pair(rd, w, i)

    g_nu_plus = [i for i in all_idx if pr(nu_plus, i) == 0]
    R_gnp = frozenset(i for i in g_nu_plus
                      if pr(mu, i) > 0 or (pr(mu, i) == 0 and pr(rho_F, i) > 0))
    rho_gnp = rd.half_sum(sorted(R_gnp))
    if la.mat_vec(frame.sigma, rho_gnp) != la.scale(-1, rho_gnp):
        raise DegenerateInput("half-sum for g(nu_+) is not elliptic")
    mu_plus = la.add(mu, la.scale(2, rho_gnp))
    lam_plus = LinearFormSS(mu_plus, nu_plus)
    R_gh = frozenset([i for i in all_idx if pr(nu_plus, i) > 0]) | R_gnp

    R_lt = frozenset(i for i in all_idx
                     if pr(nu, i) > 0
                     or (pr(nu, i) == 0 and pr(mu, i) > 0)
                     or (vanishes(rd, pt.lam, i) and pr(rho_F, i) > 0))
    g_nu = [i for i in all_idx if pr(nu, i) == 0]
    rho_can = rd.half_sum(sorted(R_lt & frozenset(g_nu)))
    lam_can = LinearFormSS(la.add(mu, la.scale(2, rho_can)), nu)
    R_lta = R_lt | Rm

    psd = PositiveSystemData(pt, epsilon, nu_plus, mu_plus, lam_plus, lam_can, rho_F, rho_can,
                             rho_prime, R_gh, R_gnp, R_lt, R_lta, Rm, a_chamber, a_wit)
    _check_positive_system(psd)
    return psd


def _check_positive_system(psd):
    rd = psd.frame.datum
    for name in ("Rplus_g_h", "Rplus_lambdatilde_aplus"):
        if not is_positive_system(rd, getattr(psd, name)):
            raise DegenerateInput(f"{name} is not a positive system")
    lp = psd.lambda_plus
    for i in range(len(rd.roots)):
        if vanishes(rd, lp, i):
            raise DegenerateInput("lambda_+ is not regular")
    expected = set(m_roots(psd.param))
    actual = {i for i in range(len(rd.roots)) if vanishes(rd, psd.lambda_can, i)}
    if expected != actual:
        raise DegenerateInput("g(lambda_can) differs from g(lambda)(i rho_F)")


def _matrix_perm_set(rd, m, subset):
    perm = rd.perm_of_matrix(m)
    return frozenset(perm[i] for i in subset)


def stabilizer_of_lambda_plus(pt, a_chamber=None, scale=1):
    """Elements of W(G,h) fixing lambda_+ computed with epsilon * scale."""
    psd = build_positive_system(pt, a_chamber)
    psd_t = build_positive_system(pt, psd.a_chamber, psd.epsilon * scale)
    ell = psd_t.ell_plus
    return [w for w in real_weyl_group(pt.frame, pt.frame.entry)
            if la.mat_vec(w, ell) == ell]


def stabilizer_of_param(pt, a_chamber=None):
    """Elements of W(G,h) fixing lambda, F+ and the a-chamber."""
    psd = build_positive_system(pt, a_chamber)
    rd = pt.frame.datum
    ell = pt.lam.ell
    fplus = frozenset(pt.positive)
    out = []
    for w in real_weyl_group(pt.frame, pt.frame.entry):
        if la.mat_vec(w, ell) != ell:
            continue
        if _matrix_perm_set(rd, w, fplus) != fplus:
            continue
        if _matrix_perm_set(rd, w, psd.Rplus_m) != psd.Rplus_m:
            continue
        out.append(w)
    return out


# integrality and classification

def integrality_defect(pt, rplus):
    """Pairings <ell + rho, z> over the kernel lattice, for a positive system rplus."""
    rd = pt.frame.datum
    shifted = la.add(pt.lam.ell, rd.half_sum(sorted(rplus)))
    return [la.dot(shifted, z) for z in pt.frame.kernel_lattice]


def is_integral_regG(pt, rplus=None):
    if rplus is None:
        rplus = build_positive_system(pt).Rplus_g_h
    return all(v.denominator == 1 for v in integrality_defect(pt, rplus))


def classify_param(pt):
    frame = pt.frame
    gl = g_lambda_roots(frame, pt.lam)
    labels = [frame.labels[i] for i in gl]
    in_reg = pt.is_regular()
    in_fond = "R" not in labels
    in_I = in_reg and in_fond and all(lab in "CN" for lab in labels)
    in_Inc = in_I and all(lab == "N" for lab in labels)
    return {
        "in_reg": in_reg,
        "in_fond": in_fond,
        "in_I": in_I,
        "in_Inc": in_Inc,
        "in_regG": in_reg and is_integral_regG(pt),
    }


# elliptic elements and descent

@dataclass(eq=False)
class EllipticPoint:
    """e = w exp(E) with w in W(G,h) (component part included) and E in t.

    ``x`` is a coweight in t with alpha(E) = i pi <alpha, x>.
    """

    frame: object
    x: tuple
    w: tuple = None
    name: str = ""

    def __post_init__(self):
        rd = self.frame.datum
        self.x = la.frac_vec(self.x)
        if la.mat_vec(la.transpose(self.frame.sigma), self.x) != la.scale(-1, self.x):
            raise DegenerateInput("E must lie in t")
        if self.w is None:
            self.w = la.identity(rd.rank)
        self.w = tuple(tuple(Fraction(v) for v in row) for row in self.w)
        self.perm = rd.perm_of_matrix(self.w)
        if self.perm is None:
            raise DegenerateInput("w does not permute the roots")

    def phase(self, i):
        """alpha_i(E) / (i pi)."""
        return la.dot(self.frame.datum.roots[i], self.x)

    def is_torus(self):
        return self.w == la.identity(self.frame.datum.rank)

    def fixes(self, pt):
        rd = self.frame.datum
        if la.mat_vec(self.w, pt.lam.ell) != pt.lam.ell:
            return False
        fplus = frozenset(pt.positive)
        return frozenset(self.perm[i] for i in fplus) == fplus

    def orbits(self):
        rd = self.frame.datum
        seen, out = set(), []
        for i in range(len(rd.roots)):
            if i in seen:
                continue
            orb, j = [], i
            while j not in orb:
                orb.append(j)
                j = self.perm[j]
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def conjugate(self, g):
        """g e g^{-1} for a weight matrix g normalizing the frame."""
        gi = la.inverse(g)
        return EllipticPoint(self.frame, la.mat_vec(self.frame.datum.coweight_matrix(g), self.x),
                             la.mat_mul(la.mat_mul(g, self.w), gi), self.name)


@dataclass(eq=False)
class DescentResult:
    param: object
    point: object
    roots: list          # restricted roots (weights) of g(e)
    labels: list
    orbits: list
    lam_roots: list      # indices into roots of g(e)(lambda)
    positive: frozenset  # indices into roots: imaginary roots of g(e)(lambda) positive on rho_F
    imaginary: list

    def simple(self):
        pos = self.positive
        out = []
        for i in sorted(pos):
            dec = any(
                _root_lookup(self.roots, la.sub(self.roots[i], self.roots[j])) in pos
                for j in pos)
            if not dec:
                out.append(i)
        return out

    def is_regular(self):
        return all(self.labels[i] == "N" for i in self.simple())

    def flags(self):
        labs = [self.labels[i] for i in self.lam_roots]
        in_reg = self.is_regular()
        in_fond = "R" not in labs
        in_I = in_reg and in_fond and all(l in "CN" for l in labs)
        return {"in_reg": in_reg, "in_fond": in_fond, "in_I": in_I,
                "in_Inc": in_I and all(l == "N" for l in labs)}

    def signature(self):
        """Signs of rho_F on the imaginary roots of g(e)(lambda): the chamber F+[e]."""
        return tuple(sorted(self.positive))


def _root_lookup(roots, v):
    for k, r in enumerate(roots):
        if r == v:
            return k
    return None


def e_stable_a_chamber(pt, e):
    rd = pt.frame.datum
    mpos = [i for i in m_roots(pt) if i < rd.npos]
    for signs, _ in enumerate_a_chambers(pt):
        pos = _as_positive_set(rd, mpos, signs)
        if frozenset(e.perm[i] for i in pos) == pos:
            return signs
    return None


def g_e_roots(e):
    """Restricted roots of g(e) on h(e): one per e-orbit of root lines with a fixed vector."""
    rd = e.frame.datum
    S = e.frame.sigma
    roots, labels, orbits = [], [], []
    for orb in e.orbits():
        total = sum((e.phase(i) for i in orb), Fraction(0))
        if total % 2:
            continue
        vec = la.scale(Fraction(2, len(orb)), rd.half_sum(orb))
        if _root_lookup(roots, vec) is not None:
            raise UnsupportedStabilizer("restricted root with multiplicity")
        sv = la.mat_vec(S, vec)
        if sv == la.scale(-1, vec):
            labs = {e.frame.labels[i] for i in orb}
            if not labs <= {"C", "N"} or len(labs) != 1:
                raise UnsupportedStabilizer("imaginary restricted root from non-imaginary roots")
            lab = labs.pop()
        elif sv == vec:
            lab = "R"
        else:
            lab = "X"
        roots.append(vec)
        labels.append(lab)
        orbits.append(orb)
    return roots, labels, orbits


def descend_at_e(pt, e):
    if not e.fixes(pt):
        raise NotFixed("e does not fix the parameter")
    if e_stable_a_chamber(pt, e) is None:
        raise NoStableChamber("no chamber of (g(lambda)(i rho_F), a) is stable under e")
    rd = pt.frame.datum
    roots, labels, orbits = g_e_roots(e)
    lam_roots = [k for k, orb in enumerate(orbits) if vanishes(rd, pt.lam, orb[0])]
    rho = pt.rho_F
    imag = [k for k in lam_roots if labels[k] in "CN"]
    positive = set()
    for k in imag:
        v = rd.inner(rho, roots[k])
        if v == 0:
            raise DegenerateInput("rho_F is singular on g(e)(lambda)")
        if v > 0:
            positive.add(k)
    return DescentResult(pt, e, roots, labels, orbits, lam_roots, frozenset(positive), imag)


def count_descent_fiber(pt, e):
    """Number of e-fixed parameters in the I-locus with the same descent as pt."""
    if not classify_param(pt)["in_I"]:
        raise DescentUndefined("parameter is not in the I-locus")
    target = descend_at_e(pt, e).signature()
    count = 0
    for other, regular in enumerate_chambers(pt.frame, pt.lam):
        if not (regular and e.fixes(other)):
            continue
        try:
            d = descend_at_e(other, e)
        except NoStableChamber:
            continue
        if d.signature() == target and classify_param(other)["in_I"]:
            count += 1
    return count


def descent_fiber_formula(pt, e):
    """|W(g(lambda))(Ad e)| / |W(g(e)(lambda))| as a Fraction."""
    rd = pt.frame.datum
    wl = _close([rd.reflection_matrix(i) for i in g_lambda_roots(pt.frame, pt.lam)
                 if i < rd.npos], rd.rank)
    cent = [w for w in wl if la.mat_mul(w, e.w) == la.mat_mul(e.w, w)]
    d = descend_at_e(pt, e)
    refl = []
    for k in d.lam_roots:
        a = d.roots[k]
        n = rd.inner(a, a)
        refl.append(tuple(
            tuple(Fraction(int(p == q)) - 2 * a[p] * la.dot(rd.form[q], a) / n
                  for q in range(rd.rank)) for p in range(rd.rank)))
    we = _close(refl, rd.rank)
    return Fraction(len(cent), len(we))


# support descriptors

@dataclass(frozen=True)
class OrbitSupportDescriptor:
    group: str
    frame: str
    ell: tuple
    cones: tuple   # (root index, '+' or '-') per sl2 factor of g(lambda)


def support_orbits_ssInc(pt):
    frame = pt.frame
    rd = frame.datum
    gl = [i for i in g_lambda_roots(frame, pt.lam) if i < rd.npos]
    for i in gl:
        if frame.labels[i] != "N":
            raise UnsupportedStabilizer("g(lambda) is not a product of sl(2,R) factors")
        for j in gl:
            if i != j and (rd.index.get(la.add(rd.roots[i], rd.roots[j])) is not None
                           or rd.index.get(la.sub(rd.roots[i], rd.roots[j])) is not None):
                raise UnsupportedStabilizer("g(lambda) has a factor of rank > 1")
    pos = set(pt.positive)
    cones = tuple((i, "+" if i in pos else "-") for i in gl)
    return OrbitSupportDescriptor(frame.group, frame.name, pt.lam.ell, cones)
