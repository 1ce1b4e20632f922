"""Root data for reductive Lie algebras: roots, coroots, invariant form, Weyl group.

Weights are stored in fundamental-weight coordinates followed by central
coordinates, so a weight is a tuple of Fractions of length ``rank``.  Elements
of the Cartan subalgebra ("coweights") use coroot coordinates followed by the
same central coordinates.  The pairing between the two is the plain dot
product, and the ω-coordinates of a root are its Cartan integers.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg as la
from .errors import GroupTooLarge, NotARoot, RankTooLarge, UnsupportedSeries

MAX_RANK = 8
WEYL_GUARD = 10 ** 6

_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "G2": lambda n: 12,
    "F4": lambda n: 48,
}


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


WEYL_ORDER = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2 ** n * _factorial(n),
    "C": lambda n: 2 ** n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "G2": lambda n: 12,
    "F4": lambda n: 1152,
}


def cartan_matrix(series, n):
    """Cartan matrix with entries A[i][j] = <alpha_i, H_j>."""
    if series not in _ROOT_COUNT:
        raise UnsupportedSeries(series)
    if series == "G2":
        if n != 2:
            raise UnsupportedSeries(f"G2 has rank 2, got {n}")
        return [[2, -1], [-3, 2]]
    if series == "F4":
        if n != 4:
            raise UnsupportedSeries(f"F4 has rank 4, got {n}")
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    minimum = {"A": 1, "B": 2, "C": 2, "D": 3}[series]
    if n < minimum:
        raise UnsupportedSeries(f"{series}{n}")
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    if series == "B":
        a[n - 2][n - 1] = -2
    elif series == "C":
        a[n - 1][n - 2] = -2
    elif series == "D":
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return a


def _symmetrizer(a):
    """Squared lengths d_i with d_i a_ij = d_j a_ji, longest roots of length 2."""
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if a[i][j] != 0 and i != j and d[j] is None:
                    d[j] = d[i] * Fraction(a[j][i], a[i][j])
                    comp.append(j)
                    queue.append(j)
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] * 2 / top
    return d


@dataclass(frozen=True)
class WeylElement:
    """An element of W acting on weights; ``root_perm[i]`` is the index of w(root_i)."""

    matrix: tuple
    root_perm: tuple
    length: int

    def act(self, weight):
        return la.mat_vec(self.matrix, weight)


@dataclass(eq=False)
class RootDatum:
    simple_factors: tuple
    rank_center: int = 0
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        blocks = [cartan_matrix(s, n) for s, n in self.simple_factors]
        self.rank_ss = sum(len(b) for b in blocks)
        if self.rank_ss + self.rank_center > MAX_RANK:
            raise RankTooLarge(self.rank_ss + self.rank_center)
        n = self.rank_ss
        self.rank = n + self.rank_center
        self.cartan = [[0] * n for _ in range(n)]
        self.factor_of_simple = []
        off = 0
        for k, b in enumerate(blocks):
            for i in range(len(b)):
                self.factor_of_simple.append(k)
                for j in range(len(b)):
                    self.cartan[off + i][off + j] = b[i][j]
            off += len(b)
        self.sq_len_simple = _symmetrizer(self.cartan) if n else []
        zero_c = (Fraction(0),) * self.rank_center
        self.simple_roots = [tuple(Fraction(x) for x in self.cartan[i]) + zero_c for i in range(n)]
        self.simple_coroots = [
            tuple(Fraction(int(i == j)) for j in range(n)) + zero_c for i in range(n)
        ]
        self._build_roots()
        self._build_form()

    # construction

    def _build_roots(self):
        n = self.rank_ss
        seen = {}
        queue = deque()
        for i in range(n):
            seen[self.simple_roots[i]] = self.simple_coroots[i]
            queue.append(self.simple_roots[i])
        while queue:
            beta = queue.popleft()
            hb = seen[beta]
            for i in range(n):
                img = self.reflect(i, beta)
                if img not in seen:
                    seen[img] = self.reflect_coweight(i, hb)
                    queue.append(img)
        at = la.transpose([[Fraction(x) for x in row] for row in self.cartan]) if n else ()
        at_inv = la.inverse(at) if n else ()

        def simple_coords(beta):
            return la.mat_vec(at_inv, beta[:n]) if n else ()

        pos = []
        for beta in seen:
            c = simple_coords(beta)
            if all(x >= 0 for x in c):
                pos.append((sum(c), tuple(-x for x in c), beta))
        pos.sort()
        positive = [b for _, _, b in pos]
        negative = [la.scale(-1, b) for b in positive]
        self.roots = tuple(positive + negative)
        self.npos = len(positive)
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.coroots = tuple(seen[r] for r in self.roots)
        self.simple_coords = tuple(simple_coords(r) for r in self.roots)
        self.heights = tuple(sum(c) for c in self.simple_coords)
        self.simple_index = tuple(self.index[s] for s in self.simple_roots)
        expected = sum(_ROOT_COUNT[s](k) for s, k in self.simple_factors)
        assert len(self.roots) == expected, (len(self.roots), expected)

    def _build_form(self):
        n = self.rank_ss
        r = self.rank
        g = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        if n:
            b = [[Fraction(self.cartan[i][j]) * self.sq_len_simple[j] / 2 for j in range(n)]
                 for i in range(n)]
            a = [[Fraction(x) for x in row] for row in self.cartan]
            a_inv = la.inverse(a)
            gs = la.mat_mul(la.mat_mul(a_inv, b), la.transpose(a_inv))
            for i in range(n):
                for j in range(n):
                    g[i][j] = gs[i][j]
        self.form = tuple(tuple(row) for row in g)

    # basic operations

    def reflect(self, i, weight):
        c = weight[i]
        if c == 0:
            return tuple(weight)
        return la.sub(weight, la.scale(c, self.simple_roots[i]))

    def reflect_coweight(self, i, x):
        c = la.dot(self.simple_roots[i], x)
        if c == 0:
            return tuple(x)
        return la.sub(x, la.scale(c, self.simple_coroots[i]))

    def root_index(self, alpha):
        key = tuple(Fraction(x) for x in alpha)
        try:
            return self.index[key]
        except KeyError:
            raise NotARoot(alpha) from None

    def coroot(self, alpha):
        return self.coroots[self.root_index(alpha)]

    def pairing(self, weight, alpha):
        """<weight, H_alpha>."""
        return la.dot(weight, self.coroot(alpha))

    def inner(self, u, v):
        return la.dot(u, la.mat_vec(self.form, v))

    def neg(self, i):
        return i + self.npos if i < self.npos else i - self.npos

    def is_positive(self, i):
        return i < self.npos

    @cached_property
    def rho(self):
        s = (Fraction(0),) * self.rank
        for r in self.roots[: self.npos]:
            s = la.add(s, r)
        return la.scale(Fraction(1, 2), s)

    def half_sum(self, indices):
        s = (Fraction(0),) * self.rank
        for i in indices:
            s = la.add(s, self.roots[i])
        return la.scale(Fraction(1, 2), s)

    def reflection_matrix(self, i):
        """Matrix of s_{root_i} on weights: lambda - <lambda, H> beta."""
        beta, h = self.roots[i], self.coroots[i]
        r = self.rank
        return tuple(
            tuple(Fraction(int(p == q)) - beta[p] * h[q] for q in range(r)) for p in range(r)
        )

    def perm_of_matrix(self, m):
        """Root permutation induced by a weight-space matrix, or None if not a root map."""
        perm = []
        for r in self.roots:
            img = la.mat_vec(m, r)
            j = self.index.get(img)
            if j is None:
                return None
            perm.append(j)
        return tuple(perm)

    # Weyl group

    def weyl_group(self):
        if "weyl" in self._cache:
            return self._cache["weyl"]
        bound = 1
        for s, k in self.simple_factors:
            bound *= WEYL_ORDER[s](k)
        if bound > WEYL_GUARD:
            raise GroupTooLarge(bound)
        ident = la.identity(self.rank)
        gens = [self.reflection_matrix(i) for i in self.simple_index]
        elems = {ident: 0}
        order = [ident]
        queue = deque([ident])
        while queue:
            m = queue.popleft()
            for g in gens:
                p = la.mat_mul(g, m)
                if p not in elems:
                    elems[p] = elems[m] + 1
                    order.append(p)
                    queue.append(p)
        out = [WeylElement(m, self.perm_of_matrix(m), elems[m]) for m in order]
        self._cache["weyl"] = out
        return out

    def weyl_lookup(self):
        if "weyl_lookup" not in self._cache:
            self._cache["weyl_lookup"] = {w.matrix: w for w in self.weyl_group()}
        return self._cache["weyl_lookup"]

    def diagram_automorphisms(self):
        """Permutations of the simple roots preserving the Cartan matrix."""
        if "diagram" in self._cache:
            return self._cache["diagram"]
        n = self.rank_ss
        a = self.cartan
        found = []

        def extend(perm, used):
            i = len(perm)
            if i == n:
                found.append(tuple(perm))
                return
            for j in range(n):
                if j in used or a[j][j] != a[i][i]:
                    continue
                if all(a[perm[k]][j] == a[k][i] and a[j][perm[k]] == a[i][k] for k in range(i)):
                    extend(perm + [j], used | {j})

        extend([], frozenset())
        self._cache["diagram"] = found
        return found

    def diagram_matrix(self, perm):
        r = self.rank
        m = [[Fraction(0)] * r for _ in range(r)]
        for i, j in enumerate(perm):
            m[j][i] = Fraction(1)
        for c in range(self.rank_ss, r):
            m[c][c] = Fraction(1)
        return tuple(tuple(row) for row in m)

    def automorphism_group(self):
        """Aut(R) = W x| diagram automorphisms, acting trivially on the centre."""
        if "aut" in self._cache:
            return self._cache["aut"]
        mats = {}
        for d in self.diagram_automorphisms():
            dm = self.diagram_matrix(d)
            for w in self.weyl_group():
                m = la.mat_mul(w.matrix, dm)
                mats[m] = None
        self._cache["aut"] = list(mats)
        return self._cache["aut"]

    def coweight_matrix(self, m):
        """Contragredient action on coweights, so pairings are preserved."""
        return la.transpose(la.inverse(m))


def build_root_datum(factors, center_rank=0):
    """Build a RootDatum from [(series, rank), ...] and a central torus rank."""
    factors = tuple((str(s), int(n)) for s, n in factors)
    for s, n in factors:
        if s not in _ROOT_COUNT:
            raise UnsupportedSeries(s)
        if n < 1:
            raise UnsupportedSeries(f"{s}{n}")
    if sum(n for _, n in factors) + center_rank > MAX_RANK:
        raise RankTooLarge(sum(n for _, n in factors) + center_rank)
    return RootDatum(factors, int(center_rank))


def weyl_group(rd):
    return rd.weyl_group()


def parse_factors(text):
    """Parse e.g. 'A1xA1' or 'C2' or '' into a factor list."""
    text = text.strip()
    if not text:
        return []
    out = []
    for part in text.replace("×", "x").split("x"):
        part = part.strip()
        if part in ("G2", "F4"):
            out.append((part, int(part[1])))
        elif part and part[0] in "ABCD" and part[1:].isdigit():
            out.append((part[0], int(part[1:])))
        else:
            raise UnsupportedSeries(part)
    return out
