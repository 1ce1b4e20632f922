"""Orbit-method parameters, metaplectic invariants and character formulas for small real groups."""

__version__ = "0.1.0"
