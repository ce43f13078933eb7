"""Polynomial dilation families rho_t = sum_j t^j B_j and their bookkeeping.

Derived data: the abelianized coefficients A_i = dq o B_i acting into the
torus, the per-level degrees D_k of the quotient maps, and the composite
degree bound D obtained by maximizing sum D_{k_m} over bracket shapes with
sum k_m <= kappa.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .rational import parse_rational


class DilationFamily:
    """Linear maps g -> g depending polynomially on the dilation parameter."""

    def __init__(self, coeff_matrices, name=""):
        if not coeff_matrices:
            raise ValueError("need at least one coefficient matrix B_0")
        self.coeffs = []
        size = None
        for mat in coeff_matrices:
            rows = tuple(tuple(parse_rational(x) for x in row) for row in mat)
            if size is None:
                size = len(rows)
            if len(rows) != size or any(len(r) != size for r in rows):
                raise ValueError("coefficient matrices must be square and equally sized")
            self.coeffs.append(rows)
        self.dim = size
        self.name = name
        self._float_coeffs = np.array(
            [[[float(x) for x in row] for row in mat] for mat in self.coeffs])

    @property
    def top_degree(self):
        """Largest j with B_j nonzero (0 for a constant family)."""
        for j in range(len(self.coeffs) - 1, -1, -1):
            if any(any(x != 0 for x in row) for row in self.coeffs[j]):
                return j
        return 0

    def eval_rho(self, t):
        """Horner evaluation of sum t^j B_j as a float matrix."""
        out = np.zeros((self.dim, self.dim))
        for mat in reversed(self._float_coeffs):
            out = out * t + mat
        return out

    def eval_rho_exact(self, t):
        t = Fraction(t)
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for mat in reversed(self.coeffs):
            out = [[out[i][j] * t + mat[i][j] for j in range(self.dim)]
                   for i in range(self.dim)]
        return tuple(tuple(row) for row in out)

    def apply(self, t, vec):
        """rho_t(vec) in float mode."""
        return self.eval_rho(t) @ np.asarray(vec, dtype=np.float64)

    def __repr__(self):
        return f"DilationFamily(dim={self.dim}, top_degree={self.top_degree})"


@dataclass(frozen=True)
class TorusCoefficients:
    """Abelianized coefficients of a dilation family.

    A[i] is the m x n block of B_i surviving the quotient to the torus; d1 is
    the largest i >= 1 with A[i] nonzero (0 when none, the degenerate case).
    A_0 is stored but flagged separately: the necessity direction of the weak
    criterion needs A_0 = 0.
    """
    A: tuple          # tuple of m x n Fraction matrices, indices 0..top_degree
    d1: int
    degenerate: bool
    a0_nonzero: bool

    def phase_rows(self, character):
        """Rows dchi o A_i for i = 1..d1 as Fraction n-vectors."""
        k = character.k
        rows = []
        for i in range(1, self.d1 + 1):
            rows.append(tuple(sum(Fraction(k[r]) * self.A[i][r][c]
                                  for r in range(len(k)))
                              for c in range(len(self.A[i][0]))))
        return rows

    def columns(self, indices=None):
        """Columns A_i[:, c] for i >= 1 as Fraction m-vectors.

        `indices` restricts which coordinate columns are taken.
        """
        cols = []
        for i in range(1, self.d1 + 1):
            n = len(self.A[i][0])
            take = range(n) if indices is None else indices
            for c in take:
                cols.append(tuple(self.A[i][r][c] for r in range(len(self.A[i]))))
        return cols


def torus_coefficients(family, algebra):
    """A_i = first m rows of B_i, plus the derived degree d1 and flags."""
    m = algebra.abelian_dim
    if family.dim != algebra.dim:
        raise ValueError("dilation family dimension does not match the algebra")
    blocks = [tuple(mat[r] for r in range(m)) for mat in family.coeffs]
    nonzero = [any(any(x != 0 for x in row) for row in b) for b in blocks]
    d1 = 0
    for i in range(len(blocks) - 1, 0, -1):
        if nonzero[i]:
            d1 = i
            break
    while len(blocks) <= d1:
        blocks.append(tuple(tuple(Fraction(0) for _ in range(algebra.dim)) for _ in range(m)))
    return TorusCoefficients(
        A=tuple(blocks[: d1 + 1]),
        d1=d1,
        degenerate=(d1 == 0),
        a0_nonzero=nonzero[0],
    )


@dataclass(frozen=True)
class DegreeData:
    Dk: tuple  # D_1 <= ... <= D_kappa
    D: int


def degree_data(family, algebra):
    """Exact degrees D_k of the level-k quotients of rho_t, and the bound D.

    D_k is the degree in t of the composition of rho_t with the projection
    killing filtration level k; D maximizes sum D_{k_m} over multisets with
    sum k_m <= kappa, found by exhaustive enumeration (kappa <= 6).
    """
    kappa = algebra.kappa
    n = algebra.dim
    Dk = []
    for k in range(1, kappa + 1):
        tail = set(algebra.filtration[k])
        surviving = [r for r in range(n) if r not in tail]
        deg = 0
        for j in range(len(family.coeffs) - 1, -1, -1):
            if any(family.coeffs[j][r][c] != 0 for r in surviving for c in range(n)):
                deg = j
                break
        Dk.append(deg)
    best = 0
    for parts in range(1, kappa + 1):
        for combo in combinations_with_replacement(range(1, kappa + 1), parts):
            if sum(combo) <= kappa:
                best = max(best, sum(Dk[k - 1] for k in combo))
    return DegreeData(Dk=tuple(Dk), D=best)


def check_graded_condition(family, algebra):
    """Whether every level-k quotient of rho_t has degree at most k."""
    data = degree_data(family, algebra)
    return all(dk <= k for k, dk in enumerate(data.Dk, start=1))
