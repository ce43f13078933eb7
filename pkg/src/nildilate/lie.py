"""Nilpotent Lie algebra and simply connected group arithmetic.

Elements live in exponential coordinates of the first kind with respect to an
adapted basis: basis vectors are ordered so that every step of the lower
central series is spanned by a tail of the basis.  Group multiplication is the
Baker-Campbell-Hausdorff series in Dynkin form; nilpotency kills all terms of
bracket depth >= kappa, so the truncated series is exact, not an
approximation.

Two scalar modes coexist: tuples of Fractions (exact, used by the
classification code) and numpy float arrays (used by quadrature).  The mode is
inferred from the input coordinates.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .rational import (
    as_exact,
    as_floats,
    is_exact_vector,
    parse_rational,
    vec_add,
    vec_is_zero,
    vec_neg,
    vec_scale,
)

MAX_SUPPORTED_CLASS = 6


class StructureError(ValueError):
    """Structure constants violate antisymmetry, Jacobi, or adaptedness."""


@lru_cache(maxsize=None)
def dynkin_word_coefficients(max_len):
    """Net rational coefficient of each letter word in the Dynkin BCH series.

    Words are tuples over {0, 1} (0 = left argument, 1 = right argument); the
    word (a_1, ..., a_w) stands for the right-nested bracket
    [v_{a_1}, [v_{a_2}, ... [v_{a_{w-1}}, v_{a_w}] ...]] / 1.  Words of length
    one are the linear terms.  Words whose last two letters coincide are
    dropped (their nested bracket vanishes identically), as are words whose
    net coefficient is zero.
    """
    acc = {}

    def blocks(n_blocks, budget, word, denom):
        # one block = X^r Y^s with r + s >= 1
        if n_blocks == 0:
            if word:
                key = tuple(word)
                acc[key] = acc.get(key, Fraction(0)) + sign / (n * len(word) * denom)
            return
        for r in range(budget + 1):
            for s in range(budget - r + 1):
                if r + s == 0:
                    continue
                blocks(n_blocks - 1, budget - r - s,
                       word + [0] * r + [1] * s,
                       denom * factorial(r) * factorial(s))

    for n in range(1, max_len + 1):
        sign = Fraction((-1) ** (n - 1))
        blocks(n, max_len, [], 1)

    out = []
    for word, coeff in acc.items():
        if coeff == 0:
            continue
        if len(word) >= 2 and word[-1] == word[-2]:
            continue
        out.append((coeff, word))
    # short words first, then lexicographic: deterministic evaluation order
    out.sort(key=lambda t: (len(t[1]), t[1]))
    return tuple(out)


@dataclass(frozen=True)
class GroupElement:
    """Element g = exp(X) of the simply connected group, stored as X."""
    algebra: "NilAlgebra"
    log: object  # tuple of Fractions or float ndarray

    def __mul__(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("group elements over different algebras")
        return GroupElement(self.algebra, self.algebra.bch(self.log, other.log))

    def inv(self):
        return GroupElement(self.algebra, vec_neg(self.log))

    @property
    def is_exact(self):
        return is_exact_vector(self.log)


class NilAlgebra:
    """A rational nilpotent Lie algebra with an adapted basis.

    Parameters
    ----------
    dim : basis size n.
    brackets : {(i, j): {k: coeff}} with i < j, 0-based, giving
        [e_i, e_j] = sum_k coeff * e_k.  Coefficients are rationals.
    kappa : declared nilpotency class (validated against the computed one).
    abelian_dim : declared m = n - dim[g, g] (validated).
    """

    def __init__(self, dim, brackets, kappa=None, abelian_dim=None, name=""):
        if dim < 1:
            raise StructureError("dimension must be positive")
        self.dim = dim
        self.name = name
        self._pairs = {}  # (i, j) -> tuple of (k, Fraction), both orientations
        for (i, j), comps in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise StructureError(f"bracket index out of range: ({i}, {j})")
            if i == j:
                raise StructureError(f"bracket of a basis vector with itself: ({i}, {j})")
            if i > j:
                raise StructureError(f"brackets must be given with i < j, got ({i}, {j})")
            entry = tuple(sorted((int(k), parse_rational(c)) for k, c in comps.items() if c))
            if not entry:
                continue
            for k, _ in entry:
                if not 0 <= k < dim:
                    raise StructureError(f"bracket target out of range in ({i}, {j}): {k}")
            if (i, j) in self._pairs:
                raise StructureError(f"duplicate bracket entry ({i}, {j})")
            self._pairs[(i, j)] = entry
            self._pairs[(j, i)] = tuple((k, -c) for k, c in entry)

        self._check_jacobi()
        self.filtration = self._lower_central_series()  # index tails, level 0..kappa
        computed_kappa = len(self.filtration) - 1
        if kappa is not None and kappa != computed_kappa:
            raise StructureError(
                f"declared nilpotency class {kappa} but lower central series "
                f"terminates at {computed_kappa}")
        self.kappa = computed_kappa
        if self.kappa > MAX_SUPPORTED_CLASS:
            raise StructureError(f"nilpotency class {self.kappa} exceeds supported maximum "
                                 f"{MAX_SUPPORTED_CLASS}")
        m = self.dim - len(self.filtration[1]) if self.kappa >= 1 else self.dim
        if abelian_dim is not None and abelian_dim != m:
            raise StructureError(f"declared abelian_dim {abelian_dim}, computed {m}")
        self.abelian_dim = m
        self._bch_terms = tuple(
            (c, w) for c, w in dynkin_word_coefficients(self.kappa) if len(w) <= self.kappa)
        self._float_tables = None

    # -- validation ---------------------------------------------------------

    def _check_jacobi(self):
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    ei, ej, ek = (self.basis_vector(t) for t in (i, j, k))
                    total = vec_add(
                        vec_add(self.bracket(ei, self.bracket(ej, ek)),
                                self.bracket(ej, self.bracket(ek, ei))),
                        self.bracket(ek, self.bracket(ei, ej)))
                    if not vec_is_zero(total):
                        raise StructureError(
                            f"Jacobi identity fails on basis triple ({i + 1}, {j + 1}, {k + 1})")

    def _lower_central_series(self):
        """Tails of the adapted basis spanning each lower-central-series step.

        Raises StructureError if some step is not a tail span (basis not
        adapted) or the series fails to reach zero.
        """
        from .intlinalg import rref

        n = self.dim
        tails = [tuple(range(n))]
        current = [self.basis_vector(i) for i in range(n)]
        for _ in range(MAX_SUPPORTED_CLASS + 1):
            nxt = []
            for i in range(n):
                ei = self.basis_vector(i)
                for v in current:
                    w = self.bracket(ei, v)
                    if not vec_is_zero(w):
                        nxt.append(list(w))
            reduced, pivots = rref(nxt)
            d = len(reduced)
            if d >= len(tails[-1]) and d > 0:
                raise StructureError("lower central series does not strictly decrease")
            tail = tuple(range(n - d, n))
            for row in reduced:
                if any(row[c] != 0 for c in range(n - d)):
                    raise StructureError(
                        "basis is not adapted: a lower-central-series step is "
                        "not spanned by a tail of the basis")
            tails.append(tail)
            if d == 0:
                return tails
            current = [self.basis_vector(n - d + t) for t in range(d)]
        raise StructureError(f"algebra is not nilpotent of class <= {MAX_SUPPORTED_CLASS}")

    # -- vectors ------------------------------------------------------------

    def zero(self, exact=True):
        if exact:
            return tuple(Fraction(0) for _ in range(self.dim))
        return np.zeros(self.dim)

    def basis_vector(self, i, exact=True):
        if exact:
            return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dim))
        v = np.zeros(self.dim)
        v[i] = 1.0
        return v

    def _coerce_pair(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError(f"dimension mismatch: algebra dim {self.dim}, "
                             f"vectors {len(x)} and {len(y)}")
        if is_exact_vector(x) and is_exact_vector(y):
            return as_exact(x), as_exact(y), True
        return as_floats(x), as_floats(y), False

    # -- operations ---------------------------------------------------------

    def bracket(self, x, y):
        """[x, y] from the structure constants; bilinear, antisymmetric."""
        x, y, exact = self._coerce_pair(x, y)
        out = list(self.zero(exact))
        for (i, j), comps in self._pairs.items():
            if i < j:
                s = x[i] * y[j] - x[j] * y[i]
                if exact and s == 0:
                    continue
                for k, c in comps:
                    out[k] += c * s if exact else float(c) * s
        return tuple(out) if exact else np.array(out)

    def bch(self, x, y):
        """log(exp(x) exp(y)); exact by nilpotent truncation of the Dynkin series."""
        x, y, exact = self._coerce_pair(x, y)
        z = vec_add(x, y)
        for coeff, word in self._bch_terms:
            if len(word) < 2:
                continue
            v = x if word[-1] == 0 else y
            for letter in reversed(word[:-1]):
                v = self.bracket(x if letter == 0 else y, v)
                if vec_is_zero(v):
                    break
            else:
                z = vec_add(z, vec_scale(v, coeff if exact else float(coeff)))
        return z

    def dq(self, x):
        """Abelianization differential: projection onto the first m coordinates."""
        m = self.abelian_dim
        if is_exact_vector(x):
            return as_exact(x)[:m]
        return as_floats(x)[:m]

    def exp(self, x):
        """The group element exp(x)."""
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        return GroupElement(self, as_exact(x) if is_exact_vector(x) else as_floats(x))

    def identity(self, exact=True):
        return GroupElement(self, self.zero(exact))

    # -- float tables for the batch kernels ----------------------------------

    def float_tables(self):
        """Structure constants and BCH terms as flat float/int arrays."""
        if self._float_tables is None:
            rows, cols, outs, vals = [], [], [], []
            for (i, j), comps in self._pairs.items():
                for k, c in comps:
                    rows.append(i)
                    cols.append(j)
                    outs.append(k)
                    vals.append(float(c))
            terms = [(float(c), w) for c, w in self._bch_terms if len(w) >= 2]
            maxlen = max((len(w) for _, w in terms), default=2)
            words = np.zeros((len(terms), maxlen), dtype=np.int64)
            wlen = np.zeros(len(terms), dtype=np.int64)
            coeffs = np.zeros(len(terms), dtype=np.float64)
            for t, (c, w) in enumerate(terms):
                words[t, :len(w)] = w
                wlen[t] = len(w)
                coeffs[t] = c
            self._float_tables = dict(
                bi=np.array(rows, dtype=np.int64),
                bj=np.array(cols, dtype=np.int64),
                bk=np.array(outs, dtype=np.int64),
                bv=np.array(vals, dtype=np.float64),
                words=words, wlen=wlen, coeffs=coeffs,
            )
        return self._float_tables

    def __repr__(self):
        label = self.name or "NilAlgebra"
        return (f"{label}(dim={self.dim}, class={self.kappa}, "
                f"abelian_dim={self.abelian_dim})")


def group_mul(g, h):
    return g * h


def group_inv(g):
    return g.inv()
