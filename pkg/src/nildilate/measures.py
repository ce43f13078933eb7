"""Measure specifications on the Lie algebra and their dilated pushforwards.

A DilatedMeasure is the law of exp(rho_t(y)) . x0 with y drawn from the spec;
`integrate` pushes quadrature nodes (atoms, curve midpoints, or staircase
support atoms) through the group reduction in one batch, `sample` draws seeded
i.i.d. points, and `cesaro_family` spreads one spec over a parameter grid.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import numpy as np

from . import kernels
from .cantor import staircase_support
from .curves import PiecewisePolynomial, StaircaseCurve
from .lattice import NilmanifoldPoint, from_second_kind
from .rational import as_exact, parse_rational

MAX_PANELS = 50_000_000
PRODUCT_NODE_BUDGET = 1 << 21


class PanelBudgetWarning(UserWarning):
    """Requested panel count is below the oscillation guard."""


class AtomicMeasure:
    def __init__(self, points, weights=None):
        self.points = tuple(as_exact(p) for p in points)
        if not self.points:
            raise ValueError("need at least one atom")
        dims = {len(p) for p in self.points}
        if len(dims) != 1:
            raise ValueError("atoms have mixed dimensions")
        self.dim = dims.pop()
        if weights is None:
            weights = [Fraction(1, len(self.points))] * len(self.points)
        self.weights = tuple(parse_rational(w) for w in weights)
        if len(self.weights) != len(self.points):
            raise ValueError("weights do not match atoms")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if sum(self.weights) != 1:
            raise ValueError("weights must sum to 1")

    def heaviest_atom(self):
        best = max(range(len(self.points)),
                   key=lambda i: (self.weights[i], [-x for x in map(float, self.points[i])]))
        return self.points[best]


class CurvePushforward:
    def __init__(self, curve):
        if not isinstance(curve, (PiecewisePolynomial, StaircaseCurve)):
            raise ValueError("unsupported curve variant")
        self.curve = curve
        self.dim = curve.dim


class CantorMeasure1D:
    """Pushforward of Lebesgue on (0,1) under the ternary staircase."""

    def __init__(self, depth=12):
        if depth < 1:
            raise ValueError("depth must be positive")
        self.depth = depth
        self.dim = 1


class ProductMeasure:
    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("need at least one factor")
        for f in factors:
            if not isinstance(f, (AtomicMeasure, CantorMeasure1D, CurvePushforward)):
                raise ValueError("product factors must be 1-d measure specs")
            if f.dim != 1:
                raise ValueError("product factors must be one-dimensional")
        self.factors = factors
        self.dim = len(factors)


MEASURE_SPECS = (AtomicMeasure, CurvePushforward, CantorMeasure1D, ProductMeasure)


def is_nonatomic(spec):
    """Exact atom test for the supported variants."""
    if isinstance(spec, AtomicMeasure):
        return False
    if isinstance(spec, CantorMeasure1D):
        return True  # staircase level sets sit inside translated Cantor sets
    if isinstance(spec, CurvePushforward):
        if isinstance(spec.curve, StaircaseCurve):
            return True
        return all(any(any(x != 0 for x in c) for c in s.coeffs[1:])
                   for s in spec.curve.segments)
    if isinstance(spec, ProductMeasure):
        return all(is_nonatomic(f) for f in spec.factors)
    raise ValueError(f"unsupported measure variant {type(spec).__name__}")


@dataclass(frozen=True)
class DilatedMeasure:
    """The pushforward of `spec` under y -> exp(rho_t(y)) . base."""
    spec: object
    base: NilmanifoldPoint
    family: object
    t: float

    def __post_init__(self):
        if self.spec.dim != self.base.algebra.dim:
            raise ValueError(f"measure lives on dimension {self.spec.dim}, "
                             f"algebra has {self.base.algebra.dim}")
        if self.family.dim != self.base.algebra.dim:
            raise ValueError("dilation family does not match the algebra")

    @property
    def algebra(self):
        return self.base.algebra


def base_point(algebra, coords=None):
    if coords is None:
        coords = np.zeros(algebra.dim)
    else:
        coords = np.asarray([float(c) for c in coords], dtype=np.float64)
    return NilmanifoldPoint(algebra, coords)


def oscillation_guard(t, family, curve_degree):
    """Minimum midpoint panels resolving the phase oscillation at parameter t."""
    guard = ceil(64 * (1.0 + abs(float(t))) ** family.top_degree * max(curve_degree, 1))
    return min(guard, MAX_PANELS)


def _curve_degree(curve):
    if isinstance(curve, StaircaseCurve):
        return 1
    return max(s.degree for s in curve.segments)


def _spec_nodes(spec, t, family, panels):
    """Quadrature nodes and weights on the Lie algebra, as float arrays."""
    if isinstance(spec, AtomicMeasure):
        pts = np.array([[float(x) for x in p] for p in spec.points])
        wts = np.array([float(w) for w in spec.weights])
        return pts, wts
    if isinstance(spec, CurvePushforward):
        guard = oscillation_guard(t, family, _curve_degree(spec.curve))
        if panels is None:
            panels = guard
        elif panels < guard:
            warnings.warn(
                f"panel count {panels} is below the oscillation guard {guard} "
                f"at t={t}", PanelBudgetWarning, stacklevel=4)
        u = (np.arange(panels) + 0.5) / panels
        pts = spec.curve.value(u).reshape(panels, spec.dim)
        return pts, np.full(panels, 1.0 / panels)
    if isinstance(spec, CantorMeasure1D):
        vals, wts = staircase_support(spec.depth)
        return vals[:, None], wts
    if isinstance(spec, ProductMeasure):
        axes = [_spec_nodes(f, t, family, panels) for f in spec.factors]
        total = 1
        for v, _ in axes:
            total *= v.shape[0]
        if total > PRODUCT_NODE_BUDGET:
            raise ValueError(
                f"product quadrature grid of {total} nodes exceeds the budget; "
                "use weyl_sum (factorized) or sample instead")
        vgrids = np.meshgrid(*[v[:, 0] for v, _ in axes], indexing="ij")
        pts = np.stack([g.reshape(-1) for g in vgrids], axis=-1)
        wgrids = np.meshgrid(*[w for _, w in axes], indexing="ij")
        wts = np.ones(pts.shape[0])
        for wg in wgrids:
            wts = wts * wg.reshape(-1)
        return pts, wts
    raise ValueError(f"unsupported measure variant {type(spec).__name__}")


def _push_to_manifold(measure, pts):
    """Batch-map algebra points through exp(rho_t(.)) . base, reduced mod the lattice."""
    algebra = measure.algebra
    rho = measure.family.eval_rho(measure.t)
    logs = pts @ rho.T
    base_coords = np.asarray([float(c) for c in measure.base.coords])
    if np.any(base_coords != 0.0):
        base_log = np.asarray(from_second_kind(algebra, base_coords).log, dtype=np.float64)
        logs = kernels.bch_batch(logs, np.broadcast_to(base_log, logs.shape).copy(),
                                 algebra.float_tables())
    coords, _ = kernels.reduce_batch(logs, algebra.float_tables())
    return coords


def integrate(f, measure, panels=None, vectorized=True):
    """Integral of f against the dilated measure.

    Atomic specs are exact finite sums; curve pushforwards use the composite
    midpoint rule with `panels` subintervals (defaulting to the oscillation
    guard); the staircase measure is enumerated over its depth-N support.
    `f` maps an (P, n) array of fundamental-domain coordinates to values.
    """
    pts, wts = _spec_nodes(measure.spec, measure.t, measure.family, panels)
    coords = _push_to_manifold(measure, pts)
    if vectorized:
        vals = np.asarray(f(coords))
    else:
        vals = np.array([f(tuple(row)) for row in coords])
    return (wts * vals).sum()


def sample(measure, count, seed):
    """Seeded i.i.d. draws; returns (count, n) fundamental-domain coordinates."""
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    pts = _draw_spec(measure.spec, count, rng)
    return _push_to_manifold(measure, pts)


def _draw_spec(spec, count, rng):
    if isinstance(spec, AtomicMeasure):
        idx = rng.choice(len(spec.points), size=count,
                         p=[float(w) for w in spec.weights])
        table = np.array([[float(x) for x in p] for p in spec.points])
        return table[idx]
    if isinstance(spec, CurvePushforward):
        u = rng.random(count)
        return spec.curve.value(u).reshape(count, spec.dim)
    if isinstance(spec, CantorMeasure1D):
        from .cantor import cantor_psi
        u = rng.random(count)
        return np.asarray(cantor_psi(u, spec.depth)).reshape(count, 1)
    if isinstance(spec, ProductMeasure):
        cols = [_draw_spec(f, count, rng)[:, 0] for f in spec.factors]
        return np.stack(cols, axis=-1)
    raise ValueError(f"unsupported measure variant {type(spec).__name__}")


def cesaro_family(spec, base, family, grid):
    """Dilated-measure handles along an increasing parameter grid."""
    grid = [float(t) for t in grid]
    if not grid:
        raise ValueError("grid must be nonempty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    return tuple((t, DilatedMeasure(spec, base, family, t)) for t in grid)
