"""Curves (0,1) -> g: piecewise polynomials and the ternary staircase.

Piecewise-polynomial curves carry exact rational coefficients so that the
obstruction conditions are decidable; the staircase curve u -> (u, psi(u))
is the built-in weak-but-not-strong construction.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rational import parse_rational

MAX_POLY_DEGREE = 12


@dataclass(frozen=True)
class PolySegment:
    lo: Fraction
    hi: Fraction
    coeffs: tuple  # coeffs[j] = c_j in g (tuple of Fractions); value = sum c_j u^j

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def value_exact(self, u):
        u = Fraction(u)
        acc = tuple(Fraction(0) for _ in self.coeffs[0])
        for c in reversed(self.coeffs):
            acc = tuple(a * u + ci for a, ci in zip(acc, c))
        return acc

    def derivative_coeffs(self):
        return tuple(
            tuple(j * x for x in self.coeffs[j]) for j in range(1, len(self.coeffs)))


class PiecewisePolynomial:
    """Polynomial segments partitioning (0,1) up to endpoints."""

    def __init__(self, segments):
        segs = []
        for lo, hi, coeffs in segments:
            lo, hi = Fraction(lo), Fraction(hi)
            if not 0 <= lo < hi <= 1:
                raise ValueError(f"segment ({lo}, {hi}) is not inside (0, 1)")
            coeffs = tuple(tuple(parse_rational(x) for x in c) for c in coeffs)
            if len(coeffs) - 1 > MAX_POLY_DEGREE:
                raise ValueError(f"segment degree {len(coeffs) - 1} exceeds cap {MAX_POLY_DEGREE}")
            segs.append(PolySegment(lo, hi, coeffs))
        segs.sort(key=lambda s: s.lo)
        if not segs:
            raise ValueError("need at least one segment")
        if segs[0].lo != 0 or segs[-1].hi != 1:
            raise ValueError("segments must cover (0, 1)")
        for a, b in zip(segs, segs[1:]):
            if a.hi != b.lo:
                raise ValueError(f"segments do not partition (0, 1): gap at {a.hi}")
        dims = {len(s.coeffs[0]) for s in segs}
        if len(dims) != 1:
            raise ValueError("segments map into different dimensions")
        self.segments = tuple(segs)
        self.dim = dims.pop()

    @property
    def is_single_segment(self):
        return len(self.segments) == 1

    def segment_at(self, u):
        for s in self.segments:
            if s.lo <= u < s.hi or (s.hi == 1 and u == 1):
                return s
        raise ValueError(f"parameter {u} outside (0, 1)")

    def value(self, u):
        """Float value of the curve; u scalar or array, vectorized over segments."""
        u = np.asarray(u, dtype=np.float64)
        out = np.zeros(u.shape + (self.dim,))
        for s in self.segments:
            mask = (u >= float(s.lo)) & (u < float(s.hi)) if s.hi != 1 else (u >= float(s.lo)) & (u <= 1.0)
            if not np.any(mask):
                continue
            us = u[mask]
            acc = np.zeros((us.size, self.dim))
            for c in reversed(s.coeffs):
                acc = acc * us[:, None] + np.array([float(x) for x in c])
            out[mask] = acc
        return out

    def value_exact(self, u):
        return self.segment_at(Fraction(u)).value_exact(u)

    def derivative(self):
        return PiecewisePolynomial([
            (s.lo, s.hi, s.derivative_coeffs() or ((Fraction(0),) * self.dim,))
            for s in self.segments])


class StaircaseCurve:
    """u -> u e_a + psi(u) e_b with psi the ternary middle-digit staircase.

    psi is locally constant off a null set, so the a.e. derivative is e_a;
    digit truncation depth controls float evaluation only.
    """

    def __init__(self, dim=2, u_index=0, psi_index=1, depth=12):
        if not (0 <= u_index < dim and 0 <= psi_index < dim) or u_index == psi_index:
            raise ValueError("u_index and psi_index must be distinct coordinates")
        if depth < 1:
            raise ValueError("depth must be positive")
        self.dim = dim
        self.u_index = u_index
        self.psi_index = psi_index
        self.depth = depth

    def value(self, u):
        from .cantor import cantor_psi
        u = np.asarray(u, dtype=np.float64)
        out = np.zeros(u.shape + (self.dim,))
        out[..., self.u_index] = u
        out[..., self.psi_index] = cantor_psi(u, self.depth)
        return out

    def derivative_ae(self):
        """The almost-everywhere derivative as a constant vector."""
        v = [Fraction(0)] * self.dim
        v[self.u_index] = Fraction(1)
        return tuple(v)
