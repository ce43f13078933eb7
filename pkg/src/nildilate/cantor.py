"""Ternary staircase arithmetic: exact digit expansions, character integrals,
and the weak-but-not-strong fixtures built from them.

psi(u) sums 3^{-n} over the positions where the greedy ternary expansion of u
has digit 1.  Under Lebesgue measure the digits are i.i.d. uniform on
{0, 1, 2}, so character integrals against the pushforward measure factorize
over digits into a convergent product with a certified tail bound; the finite
head of that product is exactly the depth-N ternary-interval enumeration.
Plain truncation at depth N leaves an O(|theta| 3^{-N}) error, far above the
1e-9 contracts once theta ~ k 3^m, so every integral here carries the tail
factor and is exact to the requested tolerance.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor, pi

import numpy as np

DEFAULT_DEPTH = 12
_MAX_PRODUCT_FACTORS = 400


@dataclass(frozen=True)
class TernaryExpansion:
    digits: tuple
    exact: bool  # True when u is a ternary rational fully captured by the digits


def ternary_digits(u, depth):
    """Greedy base-3 digits a_1..a_depth of u in [0, 1)."""
    if isinstance(u, Fraction) or isinstance(u, int):
        state = Fraction(u)
        if not 0 <= state < 1:
            raise ValueError("u must lie in [0, 1)")
        digits = []
        for _ in range(depth):
            state *= 3
            d = floor(state)
            digits.append(d)
            state -= d
        return TernaryExpansion(tuple(digits), exact=(state == 0))
    u = float(u)
    if not 0.0 <= u < 1.0:
        raise ValueError("u must lie in [0, 1)")
    j = int(u * 3 ** depth)  # snap to the depth-N grid
    digits = []
    for n in range(depth - 1, -1, -1):
        q = 3 ** n
        digits.append(j // q)
        j %= q
    return TernaryExpansion(tuple(digits), exact=False)


def cantor_psi(u, depth=DEFAULT_DEPTH):
    """Float staircase value, truncated at `depth` digits; vectorized.

    Exact for ternary rationals with denominator dividing 3^depth; otherwise
    off by at most 3^{-depth} / 2.
    """
    u = np.asarray(u, dtype=np.float64)
    j = (u * 3.0 ** depth).astype(np.int64)
    out = np.zeros_like(u)
    for n in range(1, depth + 1):
        d = (j // 3 ** (depth - n)) % 3
        out = out + (d == 1) * 3.0 ** -n
    return out if out.shape else float(out)


def cantor_psi_exact(u):
    """Exact staircase value of a rational u via its eventually periodic digits."""
    state = Fraction(u)
    if not 0 <= state < 1:
        raise ValueError("u must lie in [0, 1)")
    seen = {}
    digits = []
    while state not in seen:
        seen[state] = len(digits)
        state *= 3
        d = floor(state)
        digits.append(d)
        state -= d
    start = seen[state]  # cycle covers digits[start:]
    total = Fraction(0)
    for n, d in enumerate(digits[:start], start=1):
        if d == 1:
            total += Fraction(1, 3 ** n)
    cycle = digits[start:]
    length = len(cycle)
    block = Fraction(0)
    for off, d in enumerate(cycle):
        if d == 1:
            block += Fraction(1, 3 ** (start + 1 + off))
    total += block * Fraction(3 ** length, 3 ** length - 1)
    return total


def verify_self_similarity(u, b):
    """Exact residue 3 psi(b/3 + u) - psi(3u), asserted to be an integer.

    With greedy digits the residue equals [b == 1]; any non-integer value is a
    bug in the digit arithmetic.
    """
    u = Fraction(u)
    if not 0 <= u < Fraction(1, 3):
        raise ValueError("u must lie in [0, 1/3)")
    if b not in (0, 1, 2):
        raise ValueError("b must be a ternary digit")
    residue = 3 * cantor_psi_exact(Fraction(b, 3) + u) - cantor_psi_exact(3 * u)
    if residue.denominator != 1:
        raise AssertionError(f"self-similarity residue {residue} is not an integer")
    return int(residue)


# -- character integrals ------------------------------------------------------


def _phase_unit(theta, n):
    """e^{2 pi i (theta / 3^n)} with the phase reduced mod 1 exactly when rational."""
    if isinstance(theta, (Fraction, int)):
        frac = Fraction(theta, 3 ** n) % 1
        return np.exp(2j * pi * float(frac))
    return np.exp(2j * pi * ((float(theta) / 3 ** n) % 1.0))


def staircase_char_integral(theta, tol=1e-13, min_factors=1):
    """Integral of e^{2 pi i theta y} against the staircase pushforward measure.

    Convergent digit product; stops once the remaining factors are certified
    to differ from 1 by less than `tol`.
    """
    t_abs = abs(float(theta))
    acc = 1.0 + 0j
    n = 0
    while True:
        n += 1
        acc *= (2.0 + _phase_unit(theta, n)) / 3.0
        tail = pi * t_abs * 3.0 ** -n / 3.0
        if (n >= min_factors and tail < tol) or n >= _MAX_PRODUCT_FACTORS:
            return acc


def staircase_curve_char_integral(alpha, beta, tol=1e-13):
    """Integral over u in (0,1) of e^{2 pi i (alpha u + beta psi(u))}.

    The parameter digits and the staircase digits are the same ternary digits,
    so the joint phase still factorizes.
    """
    bound = abs(float(alpha)) * 2 + abs(float(alpha) + float(beta))
    acc = 1.0 + 0j
    n = 0
    while True:
        n += 1
        f1 = _phase_unit(_sum2(alpha, beta), n)           # digit 1: u and psi advance
        f2 = _phase_unit(_scale2(alpha), n)               # digit 2: u only, twice
        acc *= (1.0 + f1 + f2) / 3.0
        tail = pi * bound * 3.0 ** -n / 3.0
        if tail < tol or n >= _MAX_PRODUCT_FACTORS:
            return acc


def _sum2(a, b):
    if isinstance(a, (Fraction, int)) and isinstance(b, (Fraction, int)):
        return Fraction(a) + Fraction(b)
    return float(a) + float(b)


def _scale2(a):
    if isinstance(a, (Fraction, int)):
        return 2 * Fraction(a)
    return 2.0 * float(a)


def staircase_support(depth=DEFAULT_DEPTH):
    """Atoms (values, weights) of the depth-N truncated staircase measure.

    The 3^N ternary intervals collapse to 2^N distinct staircase values (the
    set of digit-1 positions); weights count the collapsed strings.
    """
    if depth > 22:
        raise ValueError("support enumeration beyond depth 22 is not sensible")
    vals = np.zeros(1)
    wts = np.ones(1)
    for n in range(1, depth + 1):
        vals = np.concatenate([vals, vals + 3.0 ** -n])
        wts = np.concatenate([wts * (2.0 / 3.0), wts / 3.0])
    wts /= wts.sum()  # scrub the float drift; true weights are 2^a / 3^N
    return vals, wts


def staircase_char_enumerated(theta, depth=DEFAULT_DEPTH, with_tail=True, tol=1e-13):
    """Depth-N interval enumeration of the character integral.

    `with_tail` multiplies the exact common tail factor of the unresolved
    digits; without it the value is the plain depth-N truncation.
    """
    vals, wts = staircase_support(depth)
    head = np.sum(wts * np.exp(2j * pi * float(theta) * vals))
    if not with_tail:
        return head
    t_abs = abs(float(theta))
    tail = 1.0 + 0j
    n = depth
    while True:
        n += 1
        tail *= (2.0 + _phase_unit(theta, n)) / 3.0
        if pi * t_abs * 3.0 ** -n / 3.0 < tol or n >= _MAX_PRODUCT_FACTORS:
            return head * tail


def verify_selfsimilar_measure(m, height=5, depth=16, tol=1e-13):
    """Max over 1 <= k <= height of the deviation between the character
    integrals of the 3^m-dilated and undilated staircase measures.

    The two sides go through different routes on purpose: the dilated side is
    the literal depth-N interval enumeration at frequency k 3^m (float phases,
    no reduction), the base side the digit product with exact mod-1 phases.
    The measures coincide, so any deviation is numerical and stays orders of
    magnitude under the 1e-9 contract.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > 0 and depth < m + 8:
        raise ValueError(f"depth {depth} too shallow for dilation exponent {m}; "
                         f"need depth >= {m + 8}")
    worst = 0.0
    for k in range(1, height + 1):
        dilated = staircase_char_enumerated(float(k * 3 ** m), depth, tol=tol)
        if m == 0:
            base = staircase_char_enumerated(float(k), depth, tol=tol)
        else:
            base = staircase_char_integral(Fraction(k), tol=tol)
        worst = max(worst, abs(dilated - base))
    return worst


def line_slice_cover_bound(p, q, cover_depth=20):
    """Exact covering bound 2^N |q / (2p)| / 3^N for the mass the staircase
    graph can place on the line p x + q y = z (any z); p must be nonzero."""
    if p == 0:
        raise ValueError("the covering bound needs p != 0")
    return Fraction(2 ** cover_depth) * abs(Fraction(q, 2 * p)) / Fraction(3 ** cover_depth)


# -- ready-made fixtures ------------------------------------------------------


def cantor_measure(depth=DEFAULT_DEPTH):
    from .measures import CantorMeasure1D
    return CantorMeasure1D(depth=depth)


def counterexample_curve(depth=DEFAULT_DEPTH):
    from .curves import StaircaseCurve
    return StaircaseCurve(dim=2, u_index=0, psi_index=1, depth=depth)


def product_cantor(d, depth=DEFAULT_DEPTH):
    from .measures import CantorMeasure1D, ProductMeasure
    if d < 1:
        raise ValueError("need at least one factor")
    return ProductMeasure(tuple(CantorMeasure1D(depth=depth) for _ in range(d)))
