"""Small exact linear algebra over Fraction, for matrices of size <= 10."""

from fractions import Fraction


def frac_vec(v):
    return tuple(Fraction(x) for x in v)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def is_zero(v):
    return all(a == 0 for a in v)


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m):
    return tuple(tuple(r) for r in zip(*m))


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def rref(m):
    """Row echelon form; returns (rows, pivot columns)."""
    rows = [list(map(Fraction, r)) for r in m]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m):
    if not m:
        return 0
    return len(rref(m)[1])


def inverse(m):
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    rows, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in rows[:n])


def solve(m, b):
    """Solve m x = b for square invertible m."""
    return mat_vec(inverse(m), b)


def nullspace(m, ncols=None):
    """Basis of {x : m x = 0}."""
    if not m:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    rows, piv = rref(m)
    n = len(m[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -rows[i][f]
        basis.append(tuple(x))
    return basis


def in_span(vectors, v):
    if not vectors:
        return is_zero(v)
    return rank(list(vectors)) == rank(list(vectors) + [v])


def coords_in_basis(basis, v):
    """Coefficients c with sum c_i basis_i = v, or None."""
    if not basis:
        return () if is_zero(v) else None
    k = len(basis)
    aug = [[basis[i][r] for i in range(k)] + [v[r]] for r in range(len(v))]
    rows, piv = rref(aug)
    if k in piv:
        return None
    c = [Fraction(0)] * k
    for i, p in enumerate(piv):
        c[p] = rows[i][k]
    return tuple(c)
