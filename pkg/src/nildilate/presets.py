"""Stock algebras, dilation families, curves, and smooth test functions.

Each algebra comes with a strictly-upper-triangular matrix realization used as
an independent oracle for BCH and lattice identities.
"""

from fractions import Fraction

import numpy as np

from .curves import PiecewisePolynomial
from .dilation import DilationFamily
from .lie import NilAlgebra
from .matrixrep import MatrixRealization


def _unit_matrix(size, r, c, value=1):
    out = [[Fraction(0)] * size for _ in range(size)]
    out[r][c] = Fraction(value)
    return out


def _shift_matrix(size):
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size - 1):
        out[i][i + 1] = Fraction(1)
    return out


def abelian_torus(m):
    """R^m with the integer lattice; every group operation is addition."""
    return NilAlgebra(m, {}, kappa=1, abelian_dim=m, name=f"torus{m}")


def heisenberg3():
    """[e1, e2] = e3; class 2, abelianization R^2."""
    return NilAlgebra(3, {(0, 1): {2: 1}}, kappa=2, abelian_dim=2, name="heisenberg3")


def heisenberg3_realization(algebra=None):
    algebra = algebra or heisenberg3()
    return MatrixRealization(algebra, [
        _unit_matrix(3, 0, 1),
        _unit_matrix(3, 1, 2),
        _unit_matrix(3, 0, 2),
    ])


def filiform4():
    """[e1, e2] = e3, [e1, e3] = e4; class 3."""
    return NilAlgebra(4, {(0, 1): {2: 1}, (0, 2): {3: 1}},
                      kappa=3, abelian_dim=2, name="filiform4")


def filiform4_realization(algebra=None):
    algebra = algebra or filiform4()
    return MatrixRealization(algebra, [
        _shift_matrix(4),
        _unit_matrix(4, 0, 1),
        _unit_matrix(4, 0, 2, -1),
        _unit_matrix(4, 0, 3),
    ])


def filiform5():
    """[e1, e_i] = e_{i+1} for i = 2, 3, 4; class 4."""
    return NilAlgebra(5, {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}},
                      kappa=4, abelian_dim=2, name="filiform5")


def filiform5_realization(algebra=None):
    algebra = algebra or filiform5()
    return MatrixRealization(algebra, [
        _shift_matrix(5),
        _unit_matrix(5, 0, 1),
        _unit_matrix(5, 0, 2, -1),
        _unit_matrix(5, 0, 3),
        _unit_matrix(5, 0, 4, -1),
    ])


def upper_triangular4():
    """All strictly upper triangular 4x4 matrices: dim 6, class 3."""
    return NilAlgebra(
        6,
        {(0, 1): {3: 1}, (1, 2): {4: 1}, (0, 4): {5: 1}, (2, 3): {5: -1}},
        kappa=3, abelian_dim=3, name="ut4")


def upper_triangular4_realization(algebra=None):
    algebra = algebra or upper_triangular4()
    return MatrixRealization(algebra, [
        _unit_matrix(4, 0, 1),
        _unit_matrix(4, 1, 2),
        _unit_matrix(4, 2, 3),
        _unit_matrix(4, 0, 2),
        _unit_matrix(4, 1, 3),
        _unit_matrix(4, 0, 3),
    ])


ALGEBRA_BUILDERS = {
    "torus1": lambda: abelian_torus(1),
    "torus2": lambda: abelian_torus(2),
    "torus3": lambda: abelian_torus(3),
    "heisenberg3": heisenberg3,
    "filiform4": filiform4,
    "filiform5": filiform5,
    "ut4": upper_triangular4,
}

REALIZATION_BUILDERS = {
    "heisenberg3": heisenberg3_realization,
    "filiform4": filiform4_realization,
    "filiform5": filiform5_realization,
    "ut4": upper_triangular4_realization,
}


def scalar_family(dim, power=1):
    """rho_t = t^power * identity."""
    mats = []
    for j in range(power + 1):
        mats.append([[("1" if (j == power and r == c) else "0") for c in range(dim)]
                     for r in range(dim)])
    return DilationFamily(mats, name=f"t^{power} id")


def diagonal_power_family(powers):
    """rho_t = diag(t^{p_1}, ..., t^{p_n}), e.g. the graded (t, t, t^2) family."""
    dim = len(powers)
    top = max(powers)
    mats = []
    for j in range(top + 1):
        mats.append([[("1" if (powers[r] == j and r == c) else "0") for c in range(dim)]
                     for r in range(dim)])
    return DilationFamily(mats, name=f"diag t^{tuple(powers)}")


def line_curve(intercept, slope):
    """Single-segment affine curve u -> intercept + u * slope."""
    return PiecewisePolynomial([(0, 1, (tuple(intercept), tuple(slope)))])


def parabola_curve2():
    """u -> (u, u^2) on a 2-d algebra."""
    return PiecewisePolynomial([(0, 1, ((0, 0), (1, 0), (0, 1)))])


def parabola_curve3():
    """u -> (u, u^2, 0) on a 3-d algebra."""
    return PiecewisePolynomial([(0, 1, ((0, 0, 0), (1, 0, 0), (0, 1, 0)))])


def mollifier(s):
    """Smooth bump on (-1, 1), vectorized; exp(1 - 1/(1 - s^2)) inside, 0 outside."""
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - si * si))
    return out


def periodized_bump(algebra, center, width, word_range=2):
    """A genuinely continuous bump on the nilmanifold.

    Sums a compactly supported mollifier of the log coordinates of x * gamma
    over nearby lattice words gamma; the sum over all of the lattice is
    locally finite, so truncating to |word| <= word_range is exact once the
    support radius is below word_range - 1.

    Returns a vectorized function of (P, n) fundamental-domain coordinates,
    plus its exact Haar integral (the full-space integral of the bump).
    """
    from itertools import product

    from .lattice import lattice_element
    from . import kernels

    n = algebra.dim
    center = np.asarray(center, dtype=np.float64)
    width = float(width)
    if width >= word_range - 0.5:
        raise ValueError("support too wide for the truncated word sum")
    gammas = []
    for word in product(range(-word_range, word_range + 1), repeat=n):
        g = lattice_element(algebra, word)
        gammas.append(np.asarray([float(c) for c in g.log], dtype=np.float64))

    tables = algebra.float_tables()

    def f(coords):
        coords = np.atleast_2d(np.asarray(coords, dtype=np.float64))
        logs = _second_kind_to_log_batch(algebra, coords)
        total = np.zeros(coords.shape[0])
        for glog in gammas:
            z = kernels.bch_batch(logs, np.broadcast_to(glog, logs.shape).copy(), tables)
            vals = np.ones(coords.shape[0])
            for a in range(n):
                vals = vals * mollifier((z[:, a] - center[a]) / width)
            total += vals
        return total

    # integral over the group = product of 1-d mollifier integrals, scaled
    moll_mass = _mollifier_mass()
    haar_value = (width * moll_mass) ** n
    return f, haar_value


def _second_kind_to_log_batch(algebra, coords):
    """Batched from_second_kind: log coords of exp(t_1 e_1) ... exp(t_n e_n)."""
    from . import kernels
    tables = algebra.float_tables()
    n = algebra.dim
    P = coords.shape[0]
    logs = np.zeros((P, n))
    for i in range(n - 1, -1, -1):
        step = np.zeros((P, n))
        step[:, i] = coords[:, i]
        logs = kernels.bch_batch(step, logs, tables)
    return logs


_MOLLIFIER_MASS = None


def _mollifier_mass():
    """Integral of the unit mollifier over (-1, 1), by fine midpoint quadrature."""
    global _MOLLIFIER_MASS
    if _MOLLIFIER_MASS is None:
        s = (np.arange(200_000) + 0.5) / 200_000 * 2.0 - 1.0
        _MOLLIFIER_MASS = float(mollifier(s).mean() * 2.0)
    return _MOLLIFIER_MASS
