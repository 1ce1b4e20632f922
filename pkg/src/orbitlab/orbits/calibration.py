"""Calibration store for the orbit-transform coefficients.

The store is a text file.  Each data line reads

    <key> <chamber of X> <chamber of lambda> <w> <re> <im> <exact|float>

where key names a rank-one factor type such as ``A1:N|N`` (label of the
root on the frame of lambda, then on the frame of X), the chambers are
the signs of alpha(X)/i and of <lambda, alpha^vee>, and w is 0 for the
identity and 1 for the reflection.  Lines starting with '#' are
comments; ``version = n`` must appear once.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import numpy as np

from ..errors import MissingCalibration, ParseError

VERSION = 1
ENV_VAR = "ORBITLAB_CALIBRATION"
KEYS = ("A1:C|C", "A1:N|N", "A1:R|N")


@dataclass
class CalibrationStore:
    version: int = VERSION
    # (key, sX, sL) -> (c_1, c_s) as complex, plus exactness flags and exact strings
    tables: dict = field(default_factory=dict)
    exact: dict = field(default_factory=dict)
    provenance: str = ""

    def coeffs(self, key, sx, sl):
        try:
            return self.tables[(key, sx, sl)]
        except KeyError:
            raise MissingCalibration(f"no calibration for {key} with chambers ({sx:+d}, {sl:+d})")

    def has(self, key):
        return any(k[0] == key for k in self.tables)


def _parse_number(text):
    return Fraction(text)


def parse_store(text, where="<calibration>"):
    store = CalibrationStore(version=None)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            if line.startswith("# provenance:"):
                store.provenance = line.split(":", 1)[1].strip()
            continue
        if line.startswith("version"):
            store.version = int(line.split("=", 1)[1])
            continue
        parts = line.split()
        if len(parts) != 7:
            raise ParseError(f"{where}:{lineno}", "expected 7 fields")
        key, sx, sl, w, re, im, flag = parts
        if flag not in ("exact", "float"):
            raise ParseError(f"{where}:{lineno}", f"bad flag {flag!r}")
        try:
            sx, sl, w = int(sx), int(sl), int(w)
            if flag == "exact":
                val = complex(float(_parse_number(re)), float(_parse_number(im)))
            else:
                val = complex(float(re), float(im))
        except ValueError as exc:
            raise ParseError(f"{where}:{lineno}", str(exc))
        if w not in (0, 1) or sx not in (1, -1) or sl not in (1, -1):
            raise ParseError(f"{where}:{lineno}", "bad chamber or Weyl index")
        cur = list(store.tables.get((key, sx, sl), (0j, 0j)))
        cur[w] = val
        store.tables[(key, sx, sl)] = tuple(cur)
        ex = list(store.exact.get((key, sx, sl), (None, None)))
        ex[w] = (re, im) if flag == "exact" else None
        store.exact[(key, sx, sl)] = tuple(ex)
    if store.version != VERSION:
        raise ParseError(where, f"unsupported calibration version {store.version}")
    return store


def format_store(store):
    lines = [
        "# Orbit-transform coefficients c_w per rank-one factor type.",
        "# fields: key, sign of alpha(X)/i, sign of <lambda, alpha^vee>, w, re, im, flag",
    ]
    if store.provenance:
        lines.append(f"# provenance: {store.provenance}")
    lines.append(f"version = {VERSION}")
    for (key, sx, sl) in sorted(store.tables, key=lambda k: (k[0], -k[1], -k[2])):
        vals = store.tables[(key, sx, sl)]
        ex = store.exact.get((key, sx, sl), (None, None))
        for w in (0, 1):
            if ex[w] is not None:
                re, im = ex[w]
                lines.append(f"{key} {sx:+d} {sl:+d} {w} {re} {im} exact")
            else:
                v = vals[w]
                lines.append(f"{key} {sx:+d} {sl:+d} {w} {v.real!r} {v.imag!r} float")
    return "\n".join(lines) + "\n"


def default_path():
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return str(resources.files("orbitlab.orbits").joinpath("data/calibration.txt"))


_CACHE = {}


def load_store(path=None):
    path = path or default_path()
    if path not in _CACHE:
        try:
            with open(path) as fh:
                text = fh.read()
        except FileNotFoundError:
            raise MissingCalibration(f"calibration store {path} not found")
        _CACHE[path] = parse_store(text, path)
    return _CACHE[path]


def clear_cache():
    _CACHE.clear()


def rationalize(z, max_den=12, tol=1e-9):
    """Nearest (p/q, r/s) with small denominators, or None."""
    out = []
    for part in (z.real, z.imag):
        f = Fraction(part).limit_denominator(max_den)
        if abs(float(f) - part) > tol:
            return None
        out.append(f)
    return tuple(out)


def _sample_pairs(rng, sx, sl, count):
    ns = rng.uniform(0.4, 4.0, count) * sl
    th = rng.uniform(0.2, 2.8, count) * sx
    return ns, th


def fit_coefficients(key, sx, sl, rng, samples=6):
    """Least-squares fit of (c_1, c_s) against the quadrature oracle."""
    from .quadrature import oracle_value
    ns, th = _sample_pairs(rng, sx, sl, samples)
    rows, rhs = [], []
    for n, t in zip(ns, th):
        v = oracle_value(key, n, t, rng)
        rows.append([np.exp(1j * n * t / 2), np.exp(-1j * n * t / 2)])
        rhs.append(v * 1j * t)
    sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return complex(sol[0]), complex(sol[1])


def calibrate(keys=KEYS, samples=6, seed=0):
    rng = np.random.default_rng(seed)
    store = CalibrationStore(provenance=f"quadrature fit, {samples} samples per chamber, seed {seed}")
    for key in keys:
        for sx in (1, -1):
            for sl in (1, -1):
                c = fit_coefficients(key, sx, sl, rng, samples)
                store.tables[(key, sx, sl)] = c
                ex = []
                for v in c:
                    r = rationalize(v)
                    ex.append(None if r is None else (str(r[0]), str(r[1])))
                store.exact[(key, sx, sl)] = tuple(ex)
                store.tables[(key, sx, sl)] = tuple(
                    complex(float(Fraction(e[0])), float(Fraction(e[1]))) if e else v
                    for e, v in zip(ex, c))
    return store
