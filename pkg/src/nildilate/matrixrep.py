"""Strictly-upper-triangular matrix realizations with exact polynomial exp/log.

For a nilpotent matrix N the exponential and the logarithm of I + N are
finite polynomial sums, so both are computed exactly over Fractions.  A
realization maps adapted-basis coordinates to such matrices and back, giving
an independent oracle for BCH, group multiplication, and lattice identities:
multiply matrices, take the exact matrix log, and pull the result back to
coordinates.
"""

from fractions import Fraction

from .intlinalg import solve


def mat_zero(size):
    return [[Fraction(0)] * size for _ in range(size)]


def mat_eye(size):
    out = mat_zero(size)
    for i in range(size):
        out[i][i] = Fraction(1)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    s = Fraction(s)
    return [[s * x for x in row] for row in a]


def mat_mul(a, b):
    size = len(a)
    out = mat_zero(size)
    for i in range(size):
        for k in range(size):
            if a[i][k]:
                aik = a[i][k]
                for j in range(size):
                    if b[k][j]:
                        out[i][j] += aik * b[k][j]
    return out


def mat_is_zero(a):
    return all(all(x == 0 for x in row) for row in a)


def mat_commutator(a, b):
    return mat_add(mat_mul(a, b), mat_scale(mat_mul(b, a), -1))


def mat_exp_nilpotent(a):
    """exp of a nilpotent matrix: the power series terminates exactly."""
    size = len(a)
    out = mat_eye(size)
    term = mat_eye(size)
    for k in range(1, size + 1):
        term = mat_scale(mat_mul(term, a), Fraction(1, k))
        if mat_is_zero(term):
            break
        out = mat_add(out, term)
    return out


def mat_log_unipotent(u):
    """log of a unipotent matrix: the Mercator series terminates exactly."""
    size = len(u)
    n = mat_add(u, mat_scale(mat_eye(size), -1))
    out = mat_zero(size)
    power = mat_eye(size)
    for k in range(1, size + 1):
        power = mat_mul(power, n)
        if mat_is_zero(power):
            break
        out = mat_add(out, mat_scale(power, Fraction((-1) ** (k - 1), k)))
    return out


class MatrixRealization:
    """Basis of strictly upper triangular matrices realizing an algebra."""

    def __init__(self, algebra, basis_matrices):
        if len(basis_matrices) != algebra.dim:
            raise ValueError("realization size does not match algebra dimension")
        self.algebra = algebra
        self.basis = [[[Fraction(x) for x in row] for row in m] for m in basis_matrices]
        self.size = len(self.basis[0])
        self._positions = sorted({
            (r, c)
            for m in self.basis
            for r in range(self.size)
            for c in range(self.size)
            if m[r][c] != 0
        })

    def to_matrix(self, vec):
        out = mat_zero(self.size)
        for coeff, m in zip(vec, self.basis):
            if coeff:
                out = mat_add(out, mat_scale(m, coeff))
        return out

    def from_matrix(self, mat):
        rows = [[self.basis[i][r][c] for i in range(self.algebra.dim)]
                for (r, c) in self._positions]
        rhs = [mat[r][c] for (r, c) in self._positions]
        coords = solve(rows, rhs)
        if coords is None or not mat_is_zero(mat_add(mat, mat_scale(self.to_matrix(coords), -1))):
            raise ValueError("matrix is not in the span of the realization basis")
        return coords

    def bch_oracle(self, x, y):
        """log(exp X exp Y) computed entirely on the matrix side."""
        ex = mat_exp_nilpotent(self.to_matrix(x))
        ey = mat_exp_nilpotent(self.to_matrix(y))
        return self.from_matrix(mat_log_unipotent(mat_mul(ex, ey)))

    def product_oracle(self, vecs):
        """Coordinates of exp(v_1) ... exp(v_k) via matrix multiplication."""
        acc = mat_eye(self.size)
        for v in vecs:
            acc = mat_mul(acc, mat_exp_nilpotent(self.to_matrix(v)))
        return self.from_matrix(mat_log_unipotent(acc))


def dynkin_series_on_matrices(x, y, max_len):
    """Evaluate the truncated Dynkin series with matrix commutators.

    Independent check of the word/coefficient table itself: for strictly upper
    triangular matrices of size max_len + 1 the result must equal
    log(exp(x) exp(y)) exactly.
    """
    from .lie import dynkin_word_coefficients

    out = mat_add(x, y)
    for coeff, word in dynkin_word_coefficients(max_len):
        if len(word) < 2:
            continue
        v = x if word[-1] == 0 else y
        for letter in reversed(word[:-1]):
            v = mat_commutator(x if letter == 0 else y, v)
            if mat_is_zero(v):
                break
        else:
            out = mat_add(out, mat_scale(v, coeff))
    return out
