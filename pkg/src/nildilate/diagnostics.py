"""Numerical equidistribution diagnostics.

Weyl sums of torus characters against dilated measures, discrete/continuous
Cesaro averages of squared pairings, empirical discrepancies, the two-point
increment map psi_t, and shrinking-window local averages.  Character pairings
never touch the group reduction: the abelianization identity turns them into
oscillatory phase integrals (or exact digit products for the staircase
variants), which is both faster and better conditioned.
"""

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

import numpy as np

from . import kernels
from .cantor import staircase_char_integral, staircase_curve_char_integral
from .curves import PiecewisePolynomial, StaircaseCurve
from .dilation import torus_coefficients
from .lattice import haar_integrate
from .measures import (
    AtomicMeasure,
    CantorMeasure1D,
    CurvePushforward,
    DilatedMeasure,
    ProductMeasure,
    integrate,
    oscillation_guard,
)
from .obstruction import Character


def _exactable(t):
    t = float(t)
    return Fraction(int(round(t))) if t.is_integer() else t


def _phase_weights(torus, chi, t):
    """Coefficients w_i = dchi o A_i for i = 0..d1, and their t-weighted rows.

    Returns (rows, t_exact) where rows[i] is an exact Fraction n-vector.
    """
    k = chi.k
    rows = []
    for i in range(0, torus.d1 + 1):
        rows.append(tuple(sum(Fraction(k[r]) * torus.A[i][r][c] for r in range(len(k)))
                          for c in range(len(torus.A[i][0]))))
    return rows, _exactable(t)


def _dot(row, vec):
    return sum(r * v for r, v in zip(row, vec))


def _theta_per_coordinate(rows, t):
    """theta_c = sum_i t^i w_i[c]; exact when t is."""
    n = len(rows[0])
    out = []
    for c in range(n):
        if isinstance(t, Fraction):
            acc = Fraction(0)
            for i in range(len(rows) - 1, -1, -1):
                acc = acc * t + rows[i][c]
        else:
            acc = 0.0
            for i in range(len(rows) - 1, -1, -1):
                acc = acc * t + float(rows[i][c])
        out.append(acc)
    return out


def weyl_sum(chi, measure, panels=None):
    """Integral of the character chi o q against the dilated measure.

    Trivial characters give exactly 1.  The pairing reduces to the phase
    integral of sum_i t^i dchi(A_i y) against the undilated spec, times the
    unimodular base-point factor.
    """
    if not isinstance(chi, Character):
        chi = Character(tuple(chi))
    if chi.trivial:
        return complex(1.0)
    algebra = measure.algebra
    torus = torus_coefficients(measure.family, algebra)
    rows, t = _phase_weights(torus, chi, measure.t)
    base_phase = np.exp(2j * np.pi * chi.dchi([float(c) for c in measure.base.abelian()]))
    spec = measure.spec

    if isinstance(spec, AtomicMeasure):
        total = 0j
        for p, w in zip(spec.points, spec.weights):
            phase = 0.0
            for i in range(len(rows) - 1, -1, -1):
                phase = phase * float(t) + float(_dot(rows[i], p))
            total += float(w) * np.exp(2j * np.pi * phase)
        return complex(total * base_phase)

    if isinstance(spec, CurvePushforward) and isinstance(spec.curve, PiecewisePolynomial):
        guard = oscillation_guard(measure.t, measure.family,
                                  max(s.degree for s in spec.curve.segments))
        budget = guard if panels is None else panels
        if budget < guard:
            from .measures import PanelBudgetWarning
            warnings.warn(f"panel count {budget} is below the oscillation guard "
                          f"{guard} at t={measure.t}", PanelBudgetWarning, stacklevel=2)
        total = 0j
        for seg in spec.curve.segments:
            length = float(seg.hi - seg.lo)
            coeffs = _segment_phase_poly(seg, rows, t)
            seg_panels = max(16, ceil(budget * length))
            total += length * kernels.phase_mean(coeffs, float(seg.lo), float(seg.hi),
                                                 seg_panels)
        return complex(total * base_phase)

    if isinstance(spec, CurvePushforward) and isinstance(spec.curve, StaircaseCurve):
        theta = _theta_per_coordinate(rows, t)
        alpha = theta[spec.curve.u_index]
        beta = theta[spec.curve.psi_index]
        return complex(staircase_curve_char_integral(alpha, beta) * base_phase)

    if isinstance(spec, CantorMeasure1D):
        theta = _theta_per_coordinate(rows, t)[0]
        return complex(staircase_char_integral(theta) * base_phase)

    if isinstance(spec, ProductMeasure):
        theta = _theta_per_coordinate(rows, t)
        total = 1.0 + 0j
        for f, th in zip(spec.factors, theta):
            total *= _factor_char_integral(f, th, measure, panels)
        return complex(total * base_phase)

    raise ValueError(f"unsupported measure variant {type(spec).__name__}")


def _segment_phase_poly(seg, rows, t):
    """Float coefficients in u of sum_i t^i dchi(A_i phi_seg(u))."""
    coeffs = []
    for j in range(len(seg.coeffs)):
        if isinstance(t, Fraction):
            acc = Fraction(0)
            for i in range(len(rows) - 1, -1, -1):
                acc = acc * t + _dot(rows[i], seg.coeffs[j])
            coeffs.append(float(acc))
        else:
            acc = 0.0
            for i in range(len(rows) - 1, -1, -1):
                acc = acc * t + float(_dot(rows[i], seg.coeffs[j]))
            coeffs.append(acc)
    return coeffs


def _factor_char_integral(factor, theta, measure, panels):
    if isinstance(factor, AtomicMeasure):
        return sum(float(w) * np.exp(2j * np.pi * float(theta) * float(p[0]))
                   for p, w in zip(factor.points, factor.weights))
    if isinstance(factor, CantorMeasure1D):
        return staircase_char_integral(theta)
    if isinstance(factor, CurvePushforward) and isinstance(factor.curve, PiecewisePolynomial):
        total = 0j
        guard = oscillation_guard(float(theta), _UNIT_FAMILY(),
                                  max(s.degree for s in factor.curve.segments))
        budget = guard if panels is None else panels
        for seg in factor.curve.segments:
            length = float(seg.hi - seg.lo)
            poly = [float(theta) * float(c[0]) for c in seg.coeffs]
            total += length * kernels.phase_mean(poly, float(seg.lo), float(seg.hi),
                                                 max(16, ceil(budget * length)))
        return total
    raise ValueError(f"unsupported product factor {type(factor).__name__}")


_unit_family_cache = None


def _UNIT_FAMILY():
    global _unit_family_cache
    if _unit_family_cache is None:
        from .dilation import DilationFamily
        _unit_family_cache = DilationFamily([[["0"]], [["1"]]])
    return _unit_family_cache


def weyl_exponential_mean(poly_coeffs, N):
    """Classical discrete Weyl mean (1/N) sum_{n=1..N} e^{2 pi i p(n)}."""
    n = np.arange(1, N + 1, dtype=np.float64)
    phase = np.zeros_like(n)
    for c in list(poly_coeffs)[::-1]:
        phase = phase * n + c
    return complex(np.exp(2j * np.pi * phase).mean())


def _pairing(f, measure, panels):
    if isinstance(f, Character) or (isinstance(f, (tuple, list)) and
                                    all(isinstance(x, int) for x in f)):
        return weyl_sum(f, measure, panels)
    return integrate(f, measure, panels)


def _warn_if_not_mean_zero(f, algebra, panels=16):
    if isinstance(f, Character) or isinstance(f, (tuple, list)):
        return  # nontrivial characters integrate to zero against Haar
    mean = haar_integrate(f, algebra, panels)
    if abs(mean) > 1e-6:
        warnings.warn(f"Cesaro average expects a mean-zero integrand; Haar mean is "
                      f"{mean:.3g}", stacklevel=3)


def weak_average_discrete(f, spec, base, family, N, panels=None):
    """(1/N) sum_{n=1..N} |integral of f against mu_n|^2."""
    if N < 1:
        raise ValueError("N must be positive")
    _warn_if_not_mean_zero(f, base.algebra)
    total = 0.0
    for n in range(1, N + 1):
        total += abs(_pairing(f, DilatedMeasure(spec, base, family, n), panels)) ** 2
    return total / N


def weak_average_continuous(f, spec, base, family, T, step=0.5, panels=None):
    """(1/T) integral_0^T |integral of f against mu_t|^2 dt, midpoint in t."""
    if T <= 0 or step <= 0:
        raise ValueError("T and step must be positive")
    _warn_if_not_mean_zero(f, base.algebra)
    count = max(1, ceil(T / step))
    ts = (np.arange(count) + 0.5) * (T / count)
    total = 0.0
    for t in ts:
        total += abs(_pairing(f, DilatedMeasure(spec, base, family, float(t)), panels)) ** 2
    return total / count


def star_discrepancy_1d(points):
    """Exact 1-d star discrepancy of a point set on the circle (by sorting)."""
    x = np.sort(np.mod(np.asarray(points, dtype=np.float64), 1.0))
    n = x.size
    if n == 0:
        raise ValueError("need at least one point")
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - x), np.max(x - (i - 1) / n)))


def character_discrepancy(points, height):
    """Max over nontrivial characters of height <= H of the empirical mean.

    Erdos-Turan style stand-in for multi-dimensional star discrepancy; points
    are abelianized coordinates, shape (P, m).
    """
    from .obstruction import characters_up_to_height
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    worst = 0.0
    for chi in characters_up_to_height(pts.shape[1], height):
        phases = pts @ np.array(chi.k, dtype=np.float64)
        worst = max(worst, abs(np.exp(2j * np.pi * phases).mean()))
    return worst


def psi_t(curve, family, u, xi, t, algebra):
    """Increment map log[exp(rho_t phi(u + xi)) exp(-rho_t phi(u))].

    Exact when the curve, u, xi, and t are all rational; float otherwise.
    """
    uf, xif = float(u), float(xi)
    if not (0.0 < uf < 1.0 and 0.0 < uf + xif < 1.0):
        raise ValueError("u and u + xi must lie in (0, 1)")
    exact = (isinstance(curve, PiecewisePolynomial)
             and all(isinstance(v, (int, Fraction)) for v in (u, xi, t)))
    if exact:
        rho = family.eval_rho_exact(t)
        a = curve.value_exact(Fraction(u) + Fraction(xi))
        b = curve.value_exact(u)
        ra = tuple(sum(rho[r][c] * a[c] for c in range(len(a))) for r in range(len(rho)))
        rb = tuple(sum(rho[r][c] * b[c] for c in range(len(b))) for r in range(len(rho)))
        return algebra.bch(ra, tuple(-x for x in rb))
    rho = family.eval_rho(float(t))
    a = rho @ np.asarray(curve.value(uf + xif), dtype=np.float64).reshape(-1)
    b = rho @ np.asarray(curve.value(uf), dtype=np.float64).reshape(-1)
    return algebra.bch(a, -b)


def shrinking_window_average(f, curve, family, s0, ell, t, base, panels=None):
    """Normalized integral of f(exp(rho_t phi(xi)) . x0) over [s0, s0 + ell/t]."""
    window = float(ell) / float(t)
    if not (0.0 < s0 and s0 + window < 1.0):
        raise ValueError("window escapes (0, 1)")
    algebra = base.algebra
    if panels is None:
        deg = 1 if isinstance(curve, StaircaseCurve) else max(s.degree for s in curve.segments)
        panels = max(256, ceil(oscillation_guard(t, family, deg) * window))
    u = s0 + window * (np.arange(panels) + 0.5) / panels
    pts = curve.value(u).reshape(panels, algebra.dim)
    logs = pts @ family.eval_rho(float(t)).T
    base_coords = np.asarray([float(c) for c in base.coords])
    if np.any(base_coords != 0.0):
        from .lattice import from_second_kind
        base_log = np.asarray(from_second_kind(algebra, base_coords).log)
        logs = kernels.bch_batch(logs, np.broadcast_to(base_log, logs.shape).copy(),
                                 algebra.float_tables())
    coords, _ = kernels.reduce_batch(logs, algebra.float_tables())
    if isinstance(f, Character) or isinstance(f, (tuple, list)):
        chi = f if isinstance(f, Character) else Character(tuple(f))
        m = algebra.abelian_dim
        vals = np.exp(2j * np.pi * (coords[:, :m] @ np.array(chi.k, dtype=np.float64)))
    else:
        vals = np.asarray(f(coords))
    return vals.mean()


@dataclass
class ConvergenceTable:
    """Rows of (param, stat, value, meta), deterministically serializable."""
    metadata: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    def add(self, param, stat, value, **meta):
        meta_str = ";".join(f"{k}={v}" for k, v in sorted(meta.items()))
        self.rows.append((float(param), str(stat), value, meta_str))

    def sorted_rows(self):
        return sorted(self.rows, key=lambda r: (r[0], r[1], r[3]))

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["param", "stat", "value", "meta"])
        for param, stat, value, meta in self.sorted_rows():
            writer.writerow([repr(param), stat, repr(float(value)), meta])
        return buf.getvalue()

    def to_json(self):
        payload = {
            "metadata": {k: str(v) for k, v in sorted(self.metadata.items())},
            "rows": [
                {"param": param, "stat": stat, "value": float(value), "meta": meta}
                for param, stat, value, meta in self.sorted_rows()
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)
