"""Rational-string parsing and dual-mode (exact / float) coordinate helpers.

Exact mode represents vectors as tuples of ``fractions.Fraction``; float mode
uses 1-d ``numpy`` arrays.  All algebraic identities (brackets, BCH, lattice
reduction) hold exactly in exact mode, while quadrature and diagnostics run in
float mode.
"""

from fractions import Fraction

import numpy as np

RATIONAL_TYPES = (Fraction, int)


def parse_rational(value):
    """Parse a config scalar ("p/q" string, int, or Fraction) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"expected rational, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid rational string {value!r}") from exc
    raise ValueError(f"expected rational string or integer, got {value!r} "
                     "(floats are rejected where exactness matters)")


def format_rational(x):
    """Inverse of parse_rational: "p/q" or "p"."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_exact_vector(v):
    if isinstance(v, np.ndarray):
        return False
    return all(isinstance(c, RATIONAL_TYPES) for c in v)


def as_exact(v):
    """Coerce a sequence of rationals to a tuple of Fractions."""
    return tuple(Fraction(c) for c in v)


def as_floats(v):
    if isinstance(v, np.ndarray):
        return np.asarray(v, dtype=np.float64)
    return np.array([float(c) for c in v], dtype=np.float64)


def vec_add(x, y):
    if isinstance(x, tuple):
        return tuple(a + b for a, b in zip(x, y))
    return x + y


def vec_sub(x, y):
    if isinstance(x, tuple):
        return tuple(a - b for a, b in zip(x, y))
    return x - y


def vec_scale(x, s):
    if isinstance(x, tuple):
        return tuple(s * a for a in x)
    return float(s) * x


def vec_neg(x):
    if isinstance(x, tuple):
        return tuple(-a for a in x)
    return -x


def vec_is_zero(x, tol=0.0):
    if isinstance(x, tuple):
        return all(a == 0 for a in x)
    return bool(np.all(np.abs(x) <= tol))
