"""Shared test utilities: seeded rational generators."""

import random
from fractions import Fraction


def rational_rng(seed):
    return random.Random(seed)


def rand_rational(rng, lo=-8, hi=8, max_den=5):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_vector(rng, dim, **kw):
    return tuple(rand_rational(rng, **kw) for _ in range(dim))
