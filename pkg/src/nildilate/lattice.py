"""Integer-points lattice in Malcev coordinates of the second kind.

A group element factors uniquely as g = exp(t_1 e_1) ... exp(t_n e_n); the
lattice is the integer coordinate vectors, the fundamental domain the unit
cube, and Haar measure is Lebesgue there.  Coordinate changes are triangular
along the filtration: multiplying by exp(-t_i e_i) only disturbs strictly
deeper basis directions, so one elimination pass per index suffices and is
exact in rational mode.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lie import GroupElement
from .rational import is_exact_vector, vec_is_zero, vec_scale

BOUNDARY_BAND = 1e-9  # float-mode snap at the top cell face, avoids flip-flop


@dataclass(frozen=True)
class NilmanifoldPoint:
    """Fundamental-domain representative: second-kind coordinates in [0, 1)."""
    algebra: "object"
    coords: object

    @property
    def is_exact(self):
        return is_exact_vector(self.coords)

    def abelian(self):
        """Image on the abelianized torus (first m coordinates mod 1)."""
        return tuple(self.coords[: self.algebra.abelian_dim])


def to_second_kind(g):
    """Coordinates (t_1, ..., t_n) with g = exp(t_1 e_1) ... exp(t_n e_n)."""
    return _log_to_second_kind(g.algebra, g.log)


def _log_to_second_kind(algebra, x):
    n = algebra.dim
    exact = is_exact_vector(x)
    y = x
    out = []
    for i in range(n):
        ti = y[i]
        out.append(ti)
        y = algebra.bch(vec_scale(algebra.basis_vector(i, exact), -ti), y)
    if exact and not vec_is_zero(y):
        raise AssertionError("second-kind elimination left a nonzero remainder")
    return tuple(out) if exact else np.array(out)


def from_second_kind(algebra, coords):
    """Group element exp(t_1 e_1) ... exp(t_n e_n)."""
    exact = is_exact_vector(coords)
    x = algebra.zero(exact)
    for i in range(algebra.dim - 1, -1, -1):
        x = algebra.bch(vec_scale(algebra.basis_vector(i, exact), coords[i]), x)
    return GroupElement(algebra, x)


def lattice_element(algebra, word):
    """The lattice element exp(m_n e_n) ... exp(m_1 e_1) for an integer word."""
    exact_word = tuple(Fraction(int(w)) for w in word)
    x = algebra.zero(True)
    for i in range(algebra.dim):
        x = algebra.bch(vec_scale(algebra.basis_vector(i, True), exact_word[i]), x)
    return GroupElement(algebra, x)


def _floor_banded(t, exact):
    if exact:
        return math.floor(t)
    k = math.floor(t)
    if t - k > 1.0 - BOUNDARY_BAND:
        k += 1
    return k


def reduce_mod_lattice(g):
    """Reduce g to its fundamental-domain representative.

    Returns (point, word) with integer word (m_1, ..., m_n) such that
    g = from_second_kind(point) * lattice_element(word); reduction runs from
    the top of the filtration down, right-multiplying by exp(-m_i e_i), which
    leaves already-reduced coordinates untouched.
    """
    algebra = g.algebra
    exact = is_exact_vector(g.log)
    y = g.log
    word = []
    for i in range(algebra.dim):
        sk = _log_to_second_kind(algebra, y)
        k = _floor_banded(sk[i], exact)
        word.append(k)
        if k != 0:
            step = vec_scale(algebra.basis_vector(i, exact), -k if exact else -float(k))
            y = algebra.bch(y, step)
    coords = _log_to_second_kind(algebra, y)
    if not exact:
        coords = np.where(coords > 1.0 - BOUNDARY_BAND, 0.0, coords)
        coords = np.clip(coords, 0.0, None)
    return NilmanifoldPoint(algebra, coords), tuple(word)


def haar_integrate(f, algebra, panels, vectorized=True):
    """Composite midpoint rule for the Haar integral over the unit cube.

    `f` takes an (P, n) array of second-kind coordinates and returns (P,)
    values when vectorized, else a single coordinate tuple.  Error is
    O(panels^-2) for smooth integrands.
    """
    if panels < 1:
        raise ValueError("panel count must be positive")
    n = algebra.dim
    axes = [(np.arange(panels) + 0.5) / panels] * n
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    if vectorized:
        vals = np.asarray(f(grid))
    else:
        vals = np.array([f(tuple(row)) for row in grid])
    return vals.mean(axis=0)
