"""Exact linear algebra over the rationals and integers.

Small dense routines on lists of Fraction rows: reduced row echelon form,
rank, nullspace, Hermite normal form, and integer kernel vectors.  These back
the character-obstruction classifier, where rounding is not acceptable; sizes
are tiny (the abelianized torus dimension), so clarity beats speed.
"""

from fractions import Fraction
from math import gcd


def rref(rows):
    """Reduced row echelon form. Returns (new_rows, pivot_columns)."""
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows, dim):
    """Basis of {x in Q^dim : R x = 0} for the given rows, as Fraction tuples."""
    reduced, pivots = rref(rows)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * dim
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -reduced[ri][fc]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs):
    """One exact solution of R x = rhs, or None if inconsistent."""
    if not rows:
        return None
    dim = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    x = [Fraction(0)] * dim
    for ri, pc in enumerate(pivots):
        if pc == dim:  # pivot in the rhs column
            return None
        x[pc] = reduced[ri][dim]
    return tuple(x)


def primitive_integer(vec):
    """Clear denominators and divide by the gcd; first nonzero entry positive."""
    vec = [Fraction(v) for v in vec]
    if all(v == 0 for v in vec):
        raise ValueError("zero vector has no primitive representative")
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    ints = [a // g for a in ints]
    lead = next(a for a in ints if a != 0)
    if lead < 0:
        ints = [-a for a in ints]
    return tuple(ints)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(mat):
    """Row-style HNF of an integer matrix.

    Returns (H, U) with U unimodular, U @ mat == H, H in row echelon form with
    positive pivots and reduced entries above each pivot.
    """
    m = len(mat)
    H = [list(map(int, row)) for row in mat]
    n = len(H[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def rowop_combine(i, k, a, b, c, d):
        # (row_i, row_k) <- (a*row_i + b*row_k, c*row_i + d*row_k)
        for M in (H, U):
            ri, rk = M[i], M[k]
            for col in range(len(ri)):
                ri[col], rk[col] = a * ri[col] + b * rk[col], c * ri[col] + d * rk[col]

    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if H[i][c] != 0), None)
        if piv is None:
            continue
        H[r], H[piv] = H[piv], H[r]
        U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            while H[i][c] != 0:
                g, x, y = _xgcd(H[r][c], H[i][c])
                a, b = H[r][c] // g, H[i][c] // g
                rowop_combine(r, i, x, y, -b, a)
        if H[r][c] < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
        if r == m:
            break
    return H, U


def integer_kernel_basis(rows, dim):
    """Primitive integer vectors spanning {k in Z^dim : R k = 0} over Q.

    The basis is HNF-canonicalized so the output is deterministic.
    """
    rational = nullspace(rows, dim)
    if not rational:
        return []
    ints = [list(primitive_integer(v)) for v in rational]
    H, _ = hermite_normal_form(ints)
    H = [row for row in H if any(row)]
    return [primitive_integer(row) for row in H]


def _height_ordered_candidates(dim, height):
    """Integer vectors with max-norm exactly `height`, first nonzero positive,
    in lexicographic order."""
    def rec(prefix):
        if len(prefix) == dim:
            if max(abs(a) for a in prefix) == height:
                lead = next((a for a in prefix if a != 0), 0)
                if lead > 0:
                    yield tuple(prefix)
            return
        for a in range(-height, height + 1):
            yield from rec(prefix + [a])
    yield from rec([])


def smallest_integer_kernel_vector(rows, dim, height_cap=None):
    """Lexicographically smallest (by height, then entries) primitive integer
    kernel vector, or None when the kernel is trivial.

    Deterministic: used to pick witness characters.
    """
    basis = integer_kernel_basis(rows, dim)
    if not basis:
        return None
    cap = max(max(abs(a) for a in v) for v in basis)
    if height_cap is not None:
        cap = min(cap, height_cap)
    rows = [list(map(Fraction, r)) for r in rows]
    for h in range(1, cap + 1):
        if (2 * h + 1) ** dim > 2_000_000:
            break  # enumeration blowing up; fall back to the basis vector
        for k in _height_ordered_candidates(dim, h):
            if all(sum(r[c] * k[c] for c in range(dim)) == 0 for r in rows):
                return k
    return min(basis, key=lambda v: (max(abs(a) for a in v), v))
