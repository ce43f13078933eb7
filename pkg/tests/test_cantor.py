"""Ternary staircase: exact identities, digit arithmetic, character products."""

from fractions import Fraction

import numpy as np
import pytest

from nildilate.cantor import (
    cantor_psi,
    cantor_psi_exact,
    line_slice_cover_bound,
    staircase_char_enumerated,
    staircase_char_integral,
    staircase_curve_char_integral,
    staircase_support,
    ternary_digits,
    verify_self_similarity,
    verify_selfsimilar_measure,
)


def test_psi_values():
    assert cantor_psi_exact(Fraction(0)) == 0
    assert cantor_psi_exact(Fraction(1, 2)) == Fraction(1, 2)   # 0.111... base 3
    assert cantor_psi_exact(Fraction(1, 3)) == Fraction(1, 3)   # greedy 0.1
    assert cantor_psi_exact(Fraction(1, 4)) == 0                # 0.020202...
    assert cantor_psi_exact(Fraction(1, 9)) == Fraction(1, 9)   # 0.01
    assert cantor_psi_exact(Fraction(5, 9)) == Fraction(1, 3)   # 0.12


def test_greedy_digits():
    assert ternary_digits(Fraction(1, 3), 4).digits == (1, 0, 0, 0)
    assert ternary_digits(Fraction(1, 3), 4).exact
    exp = ternary_digits(Fraction(1, 4), 4)
    assert exp.digits == (0, 2, 0, 2) and not exp.exact


def test_psi_float_truncation():
    u = np.array([0.0, 1.0 / 3.0, 0.5])
    v = cantor_psi(u, depth=12)
    assert v[0] == 0.0
    assert abs(v[1] - 1.0 / 3.0) <= 3.0 ** -12
    assert abs(v[2] - 0.5) <= 3.0 ** -12
    # scalar input comes back as a scalar
    assert isinstance(cantor_psi(0.25, depth=8), float)


def test_psi_bounded_on_grid():
    # psi sums 3^-n over digit-1 positions only, so it is NOT monotone
    # (psi(2/3) = 0 < psi(1/3)); the sharp range is [0, 1/2], attained at 1/2
    depth = 8
    us = np.arange(3 ** depth) / 3.0 ** depth
    vals = cantor_psi(us, depth=depth)
    assert vals.min() >= 0.0 and vals.max() <= 0.5
    assert cantor_psi_exact(Fraction(2, 3)) == 0  # witnesses non-monotonicity


def test_equal_psi_differences_lie_in_middle_thirds_set():
    pairs = [(Fraction(1, 3), Fraction(5, 9)),      # psi = 1/3 both
             (Fraction(1, 4), Fraction(1, 4) + Fraction(2, 27))]
    for u1, u2 in pairs:
        assert cantor_psi_exact(u1) == cantor_psi_exact(u2)
        digits = ternary_digits(u2 - u1, 30)
        assert set(digits.digits) <= {0, 2}


def test_self_similarity_residues():
    assert verify_self_similarity(Fraction(0), 1) == 1
    assert verify_self_similarity(Fraction(1, 9), 0) == 0
    assert verify_self_similarity(Fraction(0), 0) == 0
    depth = 6
    for j in range(3 ** (depth - 1)):
        u = Fraction(j, 3 ** depth)
        for b in (0, 1, 2):
            assert verify_self_similarity(u, b) in (0, 1)


def test_self_similarity_domain_checks():
    with pytest.raises(ValueError):
        verify_self_similarity(Fraction(1, 2), 0)
    with pytest.raises(ValueError):
        verify_self_similarity(Fraction(0), 3)


def test_support_enumeration_matches_digit_product():
    # literal 2^N-atom enumeration vs the factorized product: same value
    for theta in (1, 4, Fraction(7, 2)):
        head = staircase_char_enumerated(float(theta), depth=12, with_tail=False)
        prod = 1.0 + 0j
        for n in range(1, 13):
            prod *= (2.0 + np.exp(2j * np.pi * float(Fraction(theta) / 3 ** n))) / 3.0
        assert abs(head - prod) <= 1e-12


def test_char_integral_tail_certified():
    # depth-insensitive once the tail factor is included
    a = staircase_char_enumerated(5.0, depth=10)
    b = staircase_char_enumerated(5.0, depth=14)
    c = staircase_char_integral(Fraction(5))
    assert abs(a - b) <= 1e-12
    assert abs(a - c) <= 1e-12


def test_selfsimilar_measure_deviation():
    assert verify_selfsimilar_measure(0, height=3, depth=12) == 0.0
    assert verify_selfsimilar_measure(1, height=3, depth=12) <= 1e-9
    assert verify_selfsimilar_measure(5, height=5, depth=16) <= 1e-9


def test_selfsimilar_measure_depth_guard():
    with pytest.raises(ValueError, match="too shallow"):
        verify_selfsimilar_measure(5, height=2, depth=10)


def test_curve_char_product_matches_quadrature():
    # modest frequencies: direct midpoint quadrature of the staircase curve
    alpha, beta = 2.0, 3.0
    u = (np.arange(200_000) + 0.5) / 200_000
    direct = np.exp(2j * np.pi * (alpha * u + beta * cantor_psi(u, depth=22))).mean()
    prod = staircase_curve_char_integral(alpha, beta)
    assert abs(direct - prod) <= 1e-3


def test_cover_bound():
    for p, q in [(1, 1), (1, -2), (3, 5), (2, 7)]:
        bound = line_slice_cover_bound(p, q, 20)
        assert bound == Fraction(2 ** 20) * abs(Fraction(q, 2 * p)) / 3 ** 20
        assert float(bound) < 1e-3
    with pytest.raises(ValueError):
        line_slice_cover_bound(0, 1)


def test_support_masses():
    vals, wts = staircase_support(10)
    assert abs(wts.sum() - 1.0) <= 1e-15
    assert vals.size == 2 ** 10
    assert (wts > 0).all()
