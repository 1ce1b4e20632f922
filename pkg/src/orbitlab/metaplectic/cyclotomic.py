"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is a polynomial in zeta_N = exp(2 pi i / N) with rational
coefficients, stored as {exponent mod N: coefficient}.  Values with
different N are promoted to the lcm.  Equality is tested after
reduction modulo the N-th cyclotomic polynomial.
"""

import cmath
import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _poly_div_exact(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class Cyclo:
    __slots__ = ("n", "c")

    def __init__(self, n=1, coeffs=None):
        self.n = n
        self.c = {}
        for k, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                k %= n
                s = self.c.get(k, 0) + v
                if s:
                    self.c[k] = s
                else:
                    self.c.pop(k, None)

    @classmethod
    def rational(cls, q):
        return cls(1, {0: Fraction(q)})

    @classmethod
    def root(cls, n, k=1):
        return cls(n, {k: 1})

    @classmethod
    def expi(cls, t):
        """exp(i pi t) for rational t."""
        h = Fraction(t) / 2
        return cls(h.denominator, {h.numerator: 1})

    @classmethod
    def i(cls):
        return cls(4, {1: 1})

    def promote(self, m):
        if m % self.n:
            raise ValueError("field does not contain this one")
        f = m // self.n
        return Cyclo(m, {k * f: v for k, v in self.c.items()})

    def _pair(self, other):
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other)
        m = _lcm(self.n, other.n)
        return self.promote(m), other.promote(m), m

    def __add__(self, other):
        a, b, m = self._pair(other)
        out = dict(a.c)
        for k, v in b.c.items():
            out[k] = out.get(k, 0) + v
        return Cyclo(m, out)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclo) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b, m = self._pair(other)
        out = {}
        for k1, v1 in a.c.items():
            for k2, v2 in b.c.items():
                k = (k1 + k2) % m
                out[k] = out.get(k, 0) + v1 * v2
        return Cyclo(m, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            if len(self.c) != 1:
                raise ValueError("only monomials can be inverted")
            (k, v), = self.c.items()
            return Cyclo(self.n, {-k: 1 / v}) ** (-e)
        out = Cyclo.rational(1)
        for _ in range(e):
            out = out * self
        return out

    def conj(self):
        return Cyclo(self.n, {-k: v for k, v in self.c.items()})

    def reduced(self):
        """Coefficient tuple of the canonical representative mod Phi_n."""
        phi = cyclotomic_poly(self.n)
        deg = len(phi) - 1
        a = [Fraction(0)] * max(self.n, deg)
        for k, v in self.c.items():
            a[k] += v
        for i in range(len(a) - 1, deg - 1, -1):
            c = a[i]
            if c:
                for j, pj in enumerate(phi):
                    a[i - deg + j] -= c * pj
        return tuple(a[:deg])

    def is_zero(self):
        return not any(self.reduced())

    def __eq__(self, other):
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other)
        return (self - other).is_zero()

    __hash__ = None

    def to_complex(self):
        return sum((float(v) * cmath.exp(2j * cmath.pi * k / self.n)
                    for k, v in self.c.items()), 0j)

    def __repr__(self):
        z = self.to_complex()
        return f"Cyclo({z.real:.6g}{z.imag:+.6g}i)"


def sign_sin_half(t):
    """Sign of sin(pi t / 2) for rational t, decided exactly."""
    u = Fraction(t) / 2 % 2
    if u == 0 or u == 1:
        return 0
    return 1 if u < 1 else -1


class CycloQuotient:
    """num / den with both parts cyclotomic; compared by cross multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        self.num = num if isinstance(num, Cyclo) else Cyclo.rational(num)
        self.den = den if isinstance(den, Cyclo) else Cyclo.rational(den)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    def __mul__(self, other):
        if isinstance(other, CycloQuotient):
            return CycloQuotient(self.num * other.num, self.den * other.den)
        return CycloQuotient(self.num * other, self.den)

    __rmul__ = __mul__

    def __neg__(self):
        return CycloQuotient(-self.num, self.den)

    def __eq__(self, other):
        if not isinstance(other, CycloQuotient):
            other = CycloQuotient(other)
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def to_complex(self):
        return self.num.to_complex() / self.den.to_complex()

    def __repr__(self):
        z = self.to_complex()
        return f"CycloQuotient({z.real:.6g}{z.imag:+.6g}i)"
