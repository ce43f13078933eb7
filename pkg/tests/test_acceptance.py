"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every tolerance is pinned here; run `pytest tests/test_acceptance.py -v -s`
to see the per-criterion report.  Each item runs in well under a minute.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from nildilate.cantor import (
    cantor_measure,
    staircase_char_integral,
    verify_self_similarity,
    verify_selfsimilar_measure,
)
from nildilate.curves import PiecewisePolynomial
from nildilate.diagnostics import (
    psi_t,
    star_discrepancy_1d,
    weak_average_discrete,
    weyl_exponential_mean,
    weyl_sum,
)
from nildilate.dilation import check_graded_condition, degree_data
from nildilate.lattice import (
    from_second_kind,
    haar_integrate,
    lattice_element,
    reduce_mod_lattice,
    to_second_kind,
)
from nildilate.measures import CurvePushforward, DilatedMeasure, base_point, integrate
from nildilate.obstruction import Character, characters_up_to_height, classify
from nildilate.presets import (
    ALGEBRA_BUILDERS,
    REALIZATION_BUILDERS,
    abelian_torus,
    diagonal_power_family,
    filiform4,
    heisenberg3,
    heisenberg3_realization,
    line_curve,
    parabola_curve2,
    parabola_curve3,
    periodized_bump,
    scalar_family,
)

from helpers import rand_rational, rand_vector, rational_rng


def report(number, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion {number}: {label}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {number} failed: {label} {detail}"


def test_criterion_1_bch_oracle_equivalence():
    rng = rational_rng(101)
    worst_float = 0.0
    exact_ok = True
    for name in ("heisenberg3", "filiform4", "filiform5", "ut4"):
        algebra = ALGEBRA_BUILDERS[name]()
        real = REALIZATION_BUILDERS[name](algebra)
        for _ in range(25):  # 25 pairs x 4 algebras = 100 pairs, dims 3..6
            x = rand_vector(rng, algebra.dim)
            y = rand_vector(rng, algebra.dim)
            oracle = real.bch_oracle(x, y)
            exact_ok = exact_ok and (algebra.bch(x, y) == oracle)
            fx = np.array([float(v) for v in x])
            fy = np.array([float(v) for v in y])
            err = np.max(np.abs(algebra.bch(fx, fy) -
                                np.array([float(v) for v in oracle])))
            worst_float = max(worst_float, err)
    report(1, "BCH equals matrix exp/log oracle on 100 random pairs",
           exact_ok and worst_float <= 1e-12,
           f"exact={exact_ok}, float err={worst_float:.2e}")


def test_criterion_2_group_lattice_soundness():
    h = heisenberg3()
    rng = rational_rng(202)
    ok = True
    for _ in range(100):
        g = h.exp(rand_vector(rng, 3, lo=-6, hi=6, max_den=4))
        pt, word = reduce_mod_lattice(g)
        ok = ok and all(0 <= c < 1 for c in pt.coords)
        ok = ok and (from_second_kind(h, pt.coords) * lattice_element(h, word)).log == g.log
        ok = ok and from_second_kind(h, to_second_kind(g)).log == g.log
        gamma = tuple(rng.randint(-5, 5) for _ in range(3))
        pt2, _ = reduce_mod_lattice(g * lattice_element(h, gamma))
        ok = ok and pt2.coords == pt.coords
    report(2, "100 random Heisenberg elements: g = r*gamma exactly, round trips, "
              "lattice invariance", ok)


def test_criterion_3_classical_weyl_anchor():
    irrational = abs(weyl_exponential_mean([0.0, np.sqrt(2.0)], 10_000))
    pts = np.mod(np.arange(1, 10_001) * (3.0 / 7.0), 1.0)
    rational_disc = star_discrepancy_1d(pts)
    ok = irrational <= 1.2e-4 and rational_disc >= 1.0 / 7.0 - 1e-12
    report(3, "discrete Weyl mean decays for sqrt(2), rational slope 3/7 stays "
              "1/7 from uniform", ok,
           f"|mean|={irrational:.3e}, D*={rational_disc:.12f}")


def test_criterion_4_torus_parabola_desk_check():
    t2 = abelian_torus(2)
    fam = scalar_family(2)
    verdict = classify(parabola_curve2(), fam, t2)
    rank_ok = (verdict.kind == "Equidistributed"
               and verdict.certificate["segment_ranks"] == [2]
               and verdict.certificate["m"] == 2)
    mu = DilatedMeasure(CurvePushforward(parabola_curve2()), base_point(t2), fam, 1000.0)
    worst = max(abs(weyl_sum(chi, mu)) for chi in characters_up_to_height(2, 3))
    report(4, "parabola on T^2: all height<=3 Weyl sums <= 0.05 at t=1e3, "
              "classifier certifies rank 2",
           rank_ok and worst <= 0.05, f"worst |W|={worst:.4f}")


def test_criterion_5_obstruction_cross_validation():
    t2 = abelian_torus(2)
    fam = scalar_family(2)
    rng = rational_rng(505)
    ok = True
    for trial in range(20):
        c0 = rand_vector(rng, 2, lo=-4, hi=4, max_den=5)
        c1 = rand_vector(rng, 2, lo=-4, hi=4, max_den=5)
        if all(x == 0 for x in c1):
            c1 = (Fraction(1), c1[1])
        curve = line_curve(c0, c1)
        verdict = classify(curve, fam, t2)
        obstructed = verdict.kind == "Obstructed"
        spec = CurvePushforward(curve)
        lo = min(
            abs(weyl_sum(verdict.witness.character,
                         DilatedMeasure(spec, base_point(t2), fam, float(t))))
            for t in range(1, 101)) if obstructed else 0.0
        ok = ok and obstructed and lo >= 0.5
    # contrapositive: an equidistributed fixture dips below 0.5
    mu = DilatedMeasure(CurvePushforward(parabola_curve2()), base_point(t2), fam, 100.0)
    dip = max(abs(weyl_sum(chi, mu)) for chi in characters_up_to_height(2, 2))
    ok = ok and dip < 0.5
    report(5, "20 random rational lines: Obstructed verdict <=> witness Weyl sum "
              "stays >= 0.5 on t=1..100", ok)


def test_criterion_6_staircase_exact_identities():
    depth = 10
    ok = True
    residues = set()
    for j in range(3 ** (depth - 1)):
        u = Fraction(j, 3 ** depth)
        for b in (0, 1, 2):
            r = verify_self_similarity(u, b)
            residues.add(r)
    ok = ok and residues <= {0, 1}
    deviation = max(verify_selfsimilar_measure(m, height=5, depth=16)
                    for m in range(1, 6))
    ok = ok and deviation <= 1e-9
    report(6, "staircase self-similarity integral on the depth-10 grid; "
              "character deviations <= 1e-9 for k<=5, m<=5 at depth 16",
           ok, f"max char deviation={deviation:.2e}")


def test_criterion_7_weak_but_not_strong_separation():
    t1 = abelian_torus(1)
    fam = scalar_family(1)
    spec = cantor_measure()
    avg = weak_average_discrete(Character((1,)), spec, base_point(t1), fam, 3000)
    weak_ok = avg <= 0.1
    vals = [weyl_sum(Character((1,)),
                     DilatedMeasure(spec, base_point(t1), fam, float(3 ** m)))
            for m in range(6)]
    moduli = [abs(v) for v in vals]
    constant_ok = max(abs(m_ - moduli[0]) for m_ in moduli) <= 1e-9
    away_ok = min(moduli) >= moduli[0] - 1e-9 and moduli[0] > 0.5
    report(7, "staircase measure: Cesaro average <= 0.1 at N=3000 while the 3^m "
              "Weyl sums stay constant and bounded away from 0",
           weak_ok and constant_ok and away_ok,
           f"avg={avg:.4f}, |W|={moduli[0]:.4f}")


def test_criterion_8_heisenberg_smoke_test():
    h = heisenberg3()
    fam = scalar_family(3)
    mu = DilatedMeasure(CurvePushforward(parabola_curve3()), base_point(h), fam, 100.0)
    bumps = [
        ((0.5, 0.5, 0.5), 0.45),
        ((0.3, 0.6, 0.5), 0.40),
        ((0.7, 0.4, 0.3), 0.35),
        ((0.2, 0.2, 0.7), 0.40),
        ((0.6, 0.7, 0.6), 0.30),
    ]
    worst = 0.0
    for center, width in bumps:
        f, _ = periodized_bump(h, center, width)
        val = integrate(f, mu, panels=100_000)
        haar = haar_integrate(f, h, panels=40)
        worst = max(worst, abs(val - haar))
    report(8, "Heisenberg parabola at t=100: five smooth bumps within 0.1 of Haar "
              "with 1e5 panels", worst <= 0.1, f"worst diff={worst:.4f}")


def test_criterion_9_degree_bookkeeping():
    ok = True
    for algebra, kappa in ((abelian_torus(2), 1), (heisenberg3(), 2), (filiform4(), 3)):
        data = degree_data(scalar_family(algebra.dim), algebra)
        ok = ok and data.D == kappa and data.Dk == (1,) * kappa
    h = heisenberg3()
    ok = ok and check_graded_condition(scalar_family(3), h)
    ok = ok and not check_graded_condition(scalar_family(3, power=2), h)
    ok = ok and check_graded_condition(diagonal_power_family([1, 1, 2]), h)
    report(9, "degree data reproduces D = kappa for scalar dilations and the "
              "graded-condition examples", ok)


def test_criterion_10_increment_map_consistency():
    h = heisenberg3()
    fam3 = scalar_family(3)
    curve3 = PiecewisePolynomial([(0, 1, [("0", "0", "0"), ("1", "1/2", "1/3"),
                                          ("0", "1", "0")])])
    ok = psi_t(curve3, fam3, Fraction(1, 3), Fraction(0), Fraction(5), h) == h.zero()

    t2 = abelian_torus(2)
    fam2 = scalar_family(2)
    worst = 0.0
    for u, xi, t in [(0.2, 0.1, 7.0), (0.5, 0.25, 3.5), (0.1, 0.05, 100.0)]:
        got = np.asarray(psi_t(parabola_curve2(), fam2, u, xi, t, t2))
        expected = fam2.eval_rho(t) @ (
            parabola_curve2().value(u + xi) - parabola_curve2().value(u)).reshape(-1)
        worst = max(worst, np.max(np.abs(got - expected)))
    ok = ok and worst <= 1e-12

    real = heisenberg3_realization(h)
    rng = rational_rng(10)
    checked = 0
    while checked < 50:
        u = Fraction(rng.randint(1, 30), 64)
        xi = Fraction(rng.randint(1, 30), 64)
        t = Fraction(rng.randint(1, 20), rng.randint(1, 4))
        if float(u + xi) >= 1:
            continue
        got = psi_t(curve3, fam3, u, xi, t, h)
        rho = fam3.eval_rho_exact(t)
        a = curve3.value_exact(u + xi)
        b = curve3.value_exact(u)
        ra = tuple(sum(rho[r][c] * a[c] for c in range(3)) for r in range(3))
        rb = tuple(sum(rho[r][c] * b[c] for c in range(3)) for r in range(3))
        ok = ok and got == real.product_oracle([ra, tuple(-x for x in rb)])
        checked += 1
    report(10, "increment map: zero at xi=0, abelian difference form, 50 Heisenberg "
               "cases match the unipotent oracle", ok, f"abelian err={worst:.2e}")
