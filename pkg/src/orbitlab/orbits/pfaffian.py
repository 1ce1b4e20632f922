"""Absolute value of the Pfaffian factor on a frame."""

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from ..params import LinearFormSS


@dataclass(frozen=True)
class PfaffianValue:
    # exact product of |<lambda, alpha>|^2; the Pfaffian is its fourth root
    modulus_product: Fraction

    @property
    def value(self):
        return sqrt(sqrt(self.modulus_product))

    def __bool__(self):
        return self.modulus_product != 0


def m_roots_of(frame, lam):
    """Roots of m = centralizer of a in g(mu): imaginary roots orthogonal to mu."""
    rd = frame.datum
    return [i for i in range(len(rd.roots))
            if frame.labels[i] in "CN" and rd.inner(lam.mu, rd.roots[i]) == 0]


def pfaffian_abs(frame, lam, sub=None):
    """|Pi|^2 = prod over roots outside m of |<lambda, alpha>|.

    lambda = mu + nu with mu imaginary and nu real on h, so
    |<lambda, alpha>|^2 = <mu, alpha>^2 + <nu, alpha>^2.
    """
    if not isinstance(lam, LinearFormSS):
        lam = LinearFormSS.from_weight(frame, lam)
    rd = frame.datum
    inside = set(m_roots_of(frame, lam) if sub is None else sub)
    out = Fraction(1)
    for i, r in enumerate(rd.roots):
        if i not in inside:
            out *= rd.inner(lam.mu, r) ** 2 + rd.inner(lam.nu, r) ** 2
    return PfaffianValue(out)
