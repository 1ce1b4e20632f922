"""Randomized symplectic configurations with explicit lagrangians.

Each configuration is a direct sum of blocks in a symplectic basis
P_1..P_n, Q_1..Q_n (B(P_j, Q_k) = delta_jk).  An x-stable lagrangian L
is built from explicit eigenvectors with Gaussian-rational coordinates,
and its signature data are computed by hermitian elimination, so the
identity checks do not reuse any closed-form signature rule.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (EllipticSymplecticData, LagrangianSignature, LiftGenerator,
                   check_phase_identity, check_phi_identity, delta_fn, phi_fn,
                   reduce_window, rho_lagrangian)


class Gauss:
    """Gaussian rational a + b i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re, self.im = Fraction(re), Fraction(im)

    def __add__(self, o):
        o = _g(o)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _g(o)
        return Gauss(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __mul__(self, o):
        o = _g(o)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _g(o)
        n = o.re * o.re + o.im * o.im
        return self * Gauss(o.re / n, -o.im / n)

    def conj(self):
        return Gauss(self.re, -self.im)

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, o):
        o = _g(o)
        return self.re == o.re and self.im == o.im

    __hash__ = None

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"({self.re}+{self.im}i)"


def _g(x):
    return x if isinstance(x, Gauss) else Gauss(x)


I = Gauss(0, 1)


def symplectic_form(u, v):
    n = len(u) // 2
    return sum((u[k] * v[n + k] - u[n + k] * v[k] for k in range(n)), Gauss())


def hermitian_form(u, v):
    """h(u, v) = i B(u, conj v)."""
    return I * symplectic_form(u, [c.conj() for c in v])


def hermitian_inertia(h):
    """(positive, negative, zero) counts of a hermitian Gaussian-rational matrix."""
    h = [[_g(x) for x in row] for row in h]
    pos = neg = 0
    size = len(h)
    while h:
        n = len(h)
        piv = next((i for i in range(n) if h[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(n) if h[i][j]), None)
            if pair is None:
                break
            i, j = pair
            c = h[i][j].conj()
            # replace e_i by e_i + c e_j
            for k in range(n):
                h[k][i] = h[k][i] + h[k][j] * c
            for k in range(n):
                h[i][k] = h[i][k] + c.conj() * h[j][k]
            piv = i
        d = h[piv][piv]
        if d.im:
            raise ArithmeticError("matrix is not hermitian")
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        rest = [k for k in range(n) if k != piv]
        h = [[h[a][b] - h[a][piv] * h[piv][b] / d for b in rest] for a in rest]
    return pos, neg, size - pos - neg


@dataclass
class Eigvec:
    vec: list
    r: Fraction          # modulus of the x eigenvalue
    theta: Fraction      # angle of the x eigenvalue, units of pi
    theta_e: Fraction    # angle of the x_e eigenvalue


@dataclass
class Configuration:
    data: EllipticSymplecticData
    basis: list          # Eigvec list spanning L
    kinds: list          # block kinds, for reporting

    @property
    def eigen_on_L(self):
        return [(v.r, v.theta) for v in self.basis]

    def gram(self, vecs):
        return [[hermitian_form(u.vec, v.vec) for v in vecs] for u in vecs]

    def signature(self):
        moved = [v for v in self.basis if not (v.r == 1 and v.theta % 2 == 0)]
        q_L = hermitian_inertia(self.gram(moved))[1]
        n_L = sum(1 for v in self.basis if v.r > 1 and v.theta % 2 == 0)
        sig = []
        for z in sorted({v.theta_e % 2 for v in self.basis}):
            sub = [v for v in self.basis if v.theta_e % 2 == z]
            p, q, _ = hermitian_inertia(self.gram(sub))
            sig.append((z, p, q))
        return LagrangianSignature(n_L=n_L, q_L=q_L, eigen_sig=tuple(sig))

    def is_lagrangian(self):
        vecs = [v.vec for v in self.basis]
        if 2 * len(vecs) != self.data.dim:
            return False
        return all(not symplectic_form(u, w) for u in vecs for w in vecs)


def _rand_frac(rng, den=4, lo=-3, hi=3):
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def _full_rank_rows(rng, k, m):
    from ..linalg import rank
    while True:
        mat = [[_rand_frac(rng) for _ in range(m)] for _ in range(k)]
        if k == 0 or rank(mat) == k:
            return mat


def random_configuration(rng, max_planes=4, max_den=12):
    """A random block configuration on at most max_planes planes."""
    q = rng.randint(1, max_den)
    angle_pool = [Fraction(2 * p, q) for p in range(1, q) if Fraction(2 * p, q) != 1]
    kinds = []
    planes = 0
    while planes < max_planes:
        options = ["ell", "id", "neg", "real"]
        if planes + 2 <= max_planes:
            options.append("quad")
        kind = rng.choice(options)
        if kind == "ell" and not angle_pool:
            kind = "neg"
        if kind == "quad" and not angle_pool:
            kind = "real"
        kinds.append(kind)
        planes += 2 if kind == "quad" else 1
        if rng.random() < 0.3:
            break
    n = planes
    ell_angles, real_mods, quads = [], [], []
    for kind in kinds:
        if kind == "ell":
            ell_angles.append(rng.choice(angle_pool[:3]))
        elif kind == "real":
            s = Fraction(rng.randint(2, 5), rng.randint(1, 3))
            if s == 1:
                s = Fraction(2)
            real_mods.append((s * s, rng.choice([0, 1])))
        elif kind == "quad":
            s = Fraction(rng.choice([2, 3, Fraction(1, 2), Fraction(3, 2)]))
            quads.append((s * s, rng.choice(angle_pool)))
    n_id = kinds.count("id")
    n_neg = kinds.count("neg")

    # plane layout: ell, id, neg, real, quad (two planes each)
    idx = 0
    ell_idx = list(range(idx, idx + len(ell_angles))); idx += len(ell_angles)
    id_idx = list(range(idx, idx + n_id)); idx += n_id
    neg_idx = list(range(idx, idx + n_neg)); idx += n_neg
    real_idx = list(range(idx, idx + len(real_mods))); idx += len(real_mods)
    quad_idx = [(idx + 2 * j, idx + 2 * j + 1) for j in range(len(quads))]

    blocks = [(t, 1) for t in ell_angles] + [(0, 1)] * n_id + [(1, 1)] * n_neg
    hyper = [(r, t, 1) for r, t in real_mods] + [(r, t, 1) for r, t in quads]
    data = EllipticSymplecticData(blocks=blocks, hyper_eigen=hyper)

    def unit(k, coef=Gauss(1)):
        v = [Gauss() for _ in range(2 * n)]
        v[k] = coef
        return v

    def comb(*terms):
        v = [Gauss() for _ in range(2 * n)]
        for k, c in terms:
            v[k] = v[k] + c
        return v

    basis = []
    # elliptic planes grouped by angle: L_z from random rows, L_zbar the annihilator
    from ..linalg import nullspace
    for t in sorted(set(ell_angles)):
        ks = [ell_idx[j] for j, a in enumerate(ell_angles) if a == t]
        m = len(ks)
        k = rng.randint(0, m)
        rows = _full_rank_rows(rng, k, m)
        for row in rows:
            terms = []
            for c, p in zip(row, ks):
                terms += [(p, Gauss(c)), (n + p, -I * c)]
            basis.append(Eigvec(comb(*terms), Fraction(1), t, t))
        null = nullspace(rows, m) if k else [tuple(Fraction(int(i == j)) for j in range(m))
                                             for i in range(m)]
        for row in null:
            terms = []
            for c, p in zip(row, ks):
                terms += [(p, Gauss(c)), (n + p, I * c)]
            basis.append(Eigvec(comb(*terms), Fraction(1), -t, -t))
    # identity and -1 planes: Q_j for a random subset, graph over P for the rest
    for group, t in ((id_idx, Fraction(0)), (neg_idx, Fraction(1))):
        qs = [p for p in group if rng.random() < 0.3]
        ps = [p for p in group if p not in qs]
        for p in qs:
            basis.append(Eigvec(unit(n + p), Fraction(1), t, t))
        sym = {}
        for a in range(len(ps)):
            for b in range(a, len(ps)):
                sym[a, b] = sym[b, a] = Gauss(_rand_frac(rng, 2, -2, 2), _rand_frac(rng, 2, -2, 2))
        for a, p in enumerate(ps):
            terms = [(p, Gauss(1))] + [(n + pb, sym[a, b]) for b, pb in enumerate(ps)]
            basis.append(Eigvec(comb(*terms), Fraction(1), t, t))
    for (r, t), p in zip(real_mods, real_idx):
        if rng.random() < 0.5:
            basis.append(Eigvec(unit(p), r, Fraction(t), Fraction(t)))
        else:
            basis.append(Eigvec(unit(n + p), 1 / r, Fraction(t), Fraction(t)))
    for (r, t), (a, b) in zip(quads, quad_idx):
        choice = rng.choice(["P", "Q", "M+", "M-"])
        vp_plus = comb((a, Gauss(1)), (b, -I))
        vp_minus = comb((a, Gauss(1)), (b, I))
        vq_plus = comb((n + a, Gauss(1)), (n + b, -I))
        vq_minus = comb((n + a, Gauss(1)), (n + b, I))
        ep = [Eigvec(vp_plus, r, t, t), Eigvec(vp_minus, r, -t, -t)]
        eq = [Eigvec(vq_plus, 1 / r, t, t), Eigvec(vq_minus, 1 / r, -t, -t)]
        basis += {"P": ep, "Q": eq, "M+": [ep[0], eq[0]], "M-": [ep[1], eq[1]]}[choice]
    return Configuration(data=data, basis=basis, kinds=kinds)


def random_lift(rng, data):
    angles = [reduce_window(t) + 2 * rng.randint(-1, 1) for t, _ in data.planes()]
    return LiftGenerator(tuple((a, 1) for a in angles))


def explicit_matrix(config):
    """Floating-point matrix of x in the basis P_1..P_n, Q_1..Q_n."""
    import numpy as np
    from math import cos, pi, sin
    data = config.data
    n = data.dim // 2
    x = np.zeros((2 * n, 2 * n))
    k = 0

    def rot_plane(p, t):
        c, s = cos(pi * t), sin(pi * t)
        # P -> c P + s Q, Q -> -s P + c Q
        x[p, p], x[n + p, p], x[p, n + p], x[n + p, n + p] = c, s, -s, c

    for t, cnt in data.blocks:
        for _ in range(cnt):
            rot_plane(k, float(t))
            k += 1
    for r, t, cnt in data.hyper_eigen:
        for _ in range(cnt):
            if t % 1 == 0:
                sgn = 1 if t % 2 == 0 else -1
                x[k, k], x[n + k, n + k] = sgn * float(r), sgn / float(r)
                k += 1
            else:
                a, b = k, k + 1
                c, s = cos(pi * float(t)), sin(pi * float(t))
                rot = np.array([[c, -s], [s, c]])
                x[np.ix_([a, b], [a, b])] = float(r) * rot
                x[np.ix_([n + a, n + b], [n + a, n + b])] = rot / float(r)
                k += 2
    return x


def check_configuration(config, lift, sheet=1):
    """Return a dict of booleans for the identities on one configuration."""
    sig = config.signature()
    data, eig = config.data, config.eigen_on_L
    out = {
        "lagrangian": config.is_lagrangian(),
        "phi_identity": check_phi_identity(data, sig, eig, lift, sheet),
        "phase_identity": check_phase_identity(data, sig, eig, lift, sheet),
    }
    angles = lift.expanded()
    if angles:
        flipped = LiftGenerator(tuple((a + (2 if j == 0 else 0), 1) for j, a in enumerate(angles)))
        out["sheet_linearity"] = (
            delta_fn(data, flipped, sheet) == -delta_fn(data, lift, sheet)
            and phi_fn(data, flipped, sheet) == -phi_fn(data, lift, sheet)
            and rho_lagrangian(data, sig, eig, flipped, sheet)
            == -rho_lagrangian(data, sig, eig, lift, sheet))
    return out


def run_corpus(seed=0, cases=200, max_planes=4, max_den=12):
    """Run the identity corpus; returns (passed, failed, failures)."""
    rng = random.Random(seed)
    passed, failures = 0, []
    for case in range(cases):
        config = random_configuration(rng, max_planes, max_den)
        lift = random_lift(rng, config.data)
        sheet = rng.choice([1, -1])
        res = check_configuration(config, lift, sheet)
        if all(res.values()):
            passed += 1
        else:
            failures.append((case, config.kinds, res))
    return passed, len(failures), failures
