"""Weyl sums, Cesaro averages, discrepancies, increments, window averages."""

import warnings
from fractions import Fraction

import numpy as np
import pytest

from nildilate.cantor import cantor_measure
from nildilate.curves import PiecewisePolynomial
from nildilate.diagnostics import (
    ConvergenceTable,
    character_discrepancy,
    psi_t,
    shrinking_window_average,
    star_discrepancy_1d,
    weak_average_continuous,
    weak_average_discrete,
    weyl_exponential_mean,
    weyl_sum,
)
from nildilate.measures import (
    AtomicMeasure,
    CurvePushforward,
    DilatedMeasure,
    base_point,
)
from nildilate.obstruction import Character
from nildilate.presets import (
    abelian_torus,
    heisenberg3,
    heisenberg3_realization,
    line_curve,
    parabola_curve2,
    scalar_family,
)

from helpers import rational_rng

T1 = abelian_torus(1)
T2 = abelian_torus(2)
ID1 = scalar_family(1)
ID2 = scalar_family(2)


def test_weyl_sum_trivial_character_is_one():
    mu = DilatedMeasure(cantor_measure(), base_point(T1), ID1, 17.0)
    assert weyl_sum(Character((0,)), mu) == 1.0


def test_weyl_sum_bounded_by_one():
    rng = rational_rng(3)
    mu = DilatedMeasure(CurvePushforward(parabola_curve2()), base_point(T2), ID2, 37.0)
    for chi in [(1, 0), (2, -3), (0, 1)]:
        assert abs(weyl_sum(Character(chi), mu)) <= 1.0 + 1e-12


def test_discrete_weyl_demo_irrational_slope():
    val = weyl_exponential_mean([0.0, np.sqrt(2.0)], 10_000)
    assert abs(val) <= 1.2e-4


def test_obstructed_line_has_unit_modulus():
    spec = CurvePushforward(line_curve(("0", "0"), ("1", "1")))
    for t in (1.0, 7.0, 50.0):
        mu = DilatedMeasure(spec, base_point(T2), ID2, t)
        assert abs(abs(weyl_sum(Character((1, -1)), mu)) - 1.0) <= 1e-12


def test_weyl_sum_atomic_closed_form():
    spec = AtomicMeasure([("1/3",)])
    mu = DilatedMeasure(spec, base_point(T1), ID1, 5.0)
    assert abs(weyl_sum(Character((1,)), mu) - np.exp(2j * np.pi * 5 / 3)) <= 1e-12


def test_weak_average_atomic_is_one():
    spec = AtomicMeasure([("1/2",)])
    avg = weak_average_discrete(Character((1,)), spec, base_point(T1), ID1, 25)
    assert abs(avg - 1.0) <= 1e-12


def test_weak_average_line_is_zero():
    spec = CurvePushforward(PiecewisePolynomial([(0, 1, [("0",), ("1",)])]))
    avg = weak_average_discrete(Character((1,)), spec, base_point(T1), ID1, 20)
    assert avg <= 1e-24


def test_weak_average_continuous_runs():
    spec = CurvePushforward(PiecewisePolynomial([(0, 1, [("0",), ("1",)])]))
    avg = weak_average_continuous(Character((1,)), spec, base_point(T1), ID1,
                                  T=20.0, step=0.5)
    assert 0.0 <= avg <= 0.2


def test_weak_average_continuous_staircase_decays():
    avg = weak_average_continuous(Character((1,)), cantor_measure(),
                                  base_point(T1), ID1, T=3000.0, step=0.5)
    assert avg <= 0.1


def test_weak_average_warns_on_nonzero_mean():
    spec = AtomicMeasure([("1/2",)])
    with pytest.warns(UserWarning, match="mean-zero"):
        weak_average_discrete(lambda c: np.ones(c.shape[0]), spec,
                              base_point(T1), ID1, 3)


def test_star_discrepancy_grid():
    for n in (10, 100):
        pts = np.arange(n) / n
        assert abs(star_discrepancy_1d(pts) - 1.0 / n) <= 1e-15


def test_star_discrepancy_single_point():
    eps = 1e-3
    assert abs(star_discrepancy_1d([eps]) - (1.0 - eps)) <= 1e-15


def test_star_discrepancy_iid_uniform():
    rng = np.random.default_rng(123)
    pts = rng.random(10_000)
    d = star_discrepancy_1d(pts)
    assert d <= 0.03  # stochastic but seed-fixed
    assert abs(d - 0.015411093757068395) <= 1e-12  # golden recorded at first run


def test_character_discrepancy_grid_vs_cluster():
    grid = np.stack([np.arange(64) / 64.0, (np.arange(64) * 13 % 64) / 64.0], axis=-1)
    cluster = np.full((64, 2), 0.5)
    assert character_discrepancy(grid, 3) < 0.05
    assert character_discrepancy(cluster, 3) > 0.9


def test_psi_t_zero_offset_is_zero():
    h = heisenberg3()
    curve = PiecewisePolynomial([(0, 1, [("0", "0", "0"), ("1", "1", "0")])])
    with pytest.raises(ValueError):
        psi_t(curve, scalar_family(3), 0.5, 0.6, 2.0, h)
    out = psi_t(curve, scalar_family(3), Fraction(1, 2), Fraction(0), Fraction(2), h)
    assert out == h.zero()


def test_psi_t_abelian_reduces_to_difference():
    curve = parabola_curve2()
    fam = ID2
    out = psi_t(curve, fam, 0.25, 0.125, 11.0, T2)
    expected = fam.eval_rho(11.0) @ (curve.value(0.375)[..., :] - curve.value(0.25))
    assert np.allclose(out, expected.reshape(-1), atol=1e-12)


def test_psi_t_heisenberg_matches_matrix_oracle():
    h = heisenberg3()
    real = heisenberg3_realization(h)
    curve = PiecewisePolynomial([(0, 1, [("0", "0", "0"), ("1", "1/2", "1/3")])])
    fam = scalar_family(3)
    rng = rational_rng(17)
    for _ in range(10):
        u = Fraction(rng.randint(1, 7), 16)
        xi = Fraction(rng.randint(1, 7), 16)
        t = Fraction(rng.randint(1, 9), rng.randint(1, 3))
        if float(u + xi) >= 1:
            continue
        got = psi_t(curve, fam, u, xi, t, h)
        rho = fam.eval_rho_exact(t)
        a = curve.value_exact(u + xi)
        b = curve.value_exact(u)
        ra = tuple(sum(rho[r][c] * a[c] for c in range(3)) for r in range(3))
        rb = tuple(sum(rho[r][c] * b[c] for c in range(3)) for r in range(3))
        assert got == real.product_oracle([ra, tuple(-x for x in rb)])


def test_shrinking_window_constant_one():
    out = shrinking_window_average(lambda c: np.ones(c.shape[0]), parabola_curve2(),
                                   ID2, 0.3, 10.0, 100.0, base_point(T2))
    assert abs(out - 1.0) <= 1e-12


def test_shrinking_window_constant_curve():
    curve = line_curve(("1/4", "1/3"), ("0", "0"))
    out = shrinking_window_average(Character((1, 1)), curve, ID2, 0.2, 5.0, 50.0,
                                   base_point(T2))
    # constant curve: value is the character at rho_t(c0) reduced mod 1
    expected = np.exp(2j * np.pi * (50.0 * (0.25 + 1 / 3)))
    assert abs(out - expected) <= 1e-9


def test_shrinking_window_character_decays():
    out = shrinking_window_average(Character((1, 0)), parabola_curve2(), ID2,
                                   0.3, np.sqrt(1e4), 1e4, base_point(T2))
    assert abs(out) <= 0.05


def test_shrinking_window_domain_guard():
    with pytest.raises(ValueError, match="window"):
        shrinking_window_average(Character((1, 0)), parabola_curve2(), ID2,
                                 0.95, 100.0, 200.0, base_point(T2))


def test_convergence_table_deterministic():
    def build():
        t = ConvergenceTable(metadata={"seed": 0})
        t.add(10.0, "weyl_modulus", 0.125, char="1,1", panels=64)
        t.add(1.0, "weyl_modulus", 0.5, char="1,0", panels=64)
        return t
    assert build().to_csv() == build().to_csv()
    assert build().to_json() == build().to_json()
    lines = build().to_csv().splitlines()
    assert lines[0] == "param,stat,value,meta"
    assert lines[1].startswith("1.0,")  # sorted by parameter
