"""Second-kind coordinates, lattice reduction, Haar quadrature."""

from fractions import Fraction

import numpy as np
import pytest

from nildilate.lattice import (
    from_second_kind,
    haar_integrate,
    lattice_element,
    reduce_mod_lattice,
    to_second_kind,
)
from nildilate.lie import GroupElement
from nildilate.presets import (
    abelian_torus,
    filiform4,
    heisenberg3,
    heisenberg3_realization,
)

from helpers import rand_vector, rational_rng


def test_second_kind_abelian_identity():
    t = abelian_torus(3)
    rng = rational_rng(0)
    x = rand_vector(rng, 3)
    assert to_second_kind(t.exp(x)) == x


def test_second_kind_heisenberg_formula():
    # derived by composing exp(t1 e1) exp(t2 e2) exp(t3 e3) through the
    # unipotent-matrix oracle and solving; frozen here
    h = heisenberg3()
    real = heisenberg3_realization(h)
    rng = rational_rng(1)
    for _ in range(10):
        a, b, c = rand_vector(rng, 3)
        sk = to_second_kind(h.exp((a, b, c)))
        assert sk == (a, b, c - a * b / 2)
        assert real.product_oracle([
            (sk[0], Fraction(0), Fraction(0)),
            (Fraction(0), sk[1], Fraction(0)),
            (Fraction(0), Fraction(0), sk[2]),
        ]) == (a, b, c)


def test_second_kind_identity_is_zero():
    h = heisenberg3()
    assert to_second_kind(h.identity()) == h.zero()


def test_second_kind_round_trip():
    for algebra in (heisenberg3(), filiform4()):
        rng = rational_rng(algebra.dim)
        for _ in range(10):
            x = rand_vector(rng, algebra.dim)
            g = algebra.exp(x)
            assert from_second_kind(algebra, to_second_kind(g)).log == x
    # float mode
    h = heisenberg3()
    x = np.array([0.3, -1.7, 2.9])
    rt = np.asarray(from_second_kind(h, np.asarray(to_second_kind(h.exp(x)))).log)
    assert np.allclose(rt, x, atol=1e-12)


def test_reduce_torus_example():
    t = abelian_torus(2)
    pt, word = reduce_mod_lattice(t.exp((Fraction(5, 4), Fraction(-1, 2))))
    assert pt.coords == (Fraction(1, 4), Fraction(1, 2))
    assert word == (1, -1)


def test_reduce_identity():
    h = heisenberg3()
    pt, word = reduce_mod_lattice(h.identity())
    assert pt.coords == h.zero()
    assert word == (0, 0, 0)


def test_reduce_heisenberg_exact_group_identity():
    h = heisenberg3()
    g = from_second_kind(h, (Fraction(3, 2), Fraction(1, 4), Fraction(27, 10)))
    pt, word = reduce_mod_lattice(g)
    assert all(0 <= c < 1 for c in pt.coords)
    recon = from_second_kind(h, pt.coords) * lattice_element(h, word)
    assert recon.log == g.log


def test_reduce_is_lattice_invariant():
    h = heisenberg3()
    rng = rational_rng(4)
    for _ in range(10):
        g = h.exp(rand_vector(rng, 3))
        word = tuple(rng.randint(-5, 5) for _ in range(3))
        pt1, _ = reduce_mod_lattice(g)
        pt2, _ = reduce_mod_lattice(g * lattice_element(h, word))
        assert pt1.coords == pt2.coords


def test_lattice_closure():
    # any word product reduces to the identity representative
    h = heisenberg3()
    rng = rational_rng(5)
    for _ in range(5):
        g = h.identity()
        for _ in range(3):
            g = g * lattice_element(h, tuple(rng.randint(-4, 4) for _ in range(3)))
        pt, _ = reduce_mod_lattice(g)
        assert pt.coords == h.zero()


def test_float_reduction_boundary_band():
    h = abelian_torus(1)
    g = GroupElement(h, np.array([0.9999999999995]))  # inside the 1e-9 band
    pt, word = reduce_mod_lattice(g)
    assert pt.coords[0] == 0.0
    assert word == (1,)


def test_haar_normalization():
    h = heisenberg3()
    assert haar_integrate(lambda c: np.ones(c.shape[0]), h, panels=4) == 1.0


def test_haar_character_vanishes():
    t = abelian_torus(2)
    val = haar_integrate(lambda c: np.exp(2j * np.pi * c[:, 0]), t, panels=24)
    assert abs(val) <= 1e-12


def test_haar_product_of_coordinates():
    t = abelian_torus(2)
    val = haar_integrate(lambda c: c[:, 0] * c[:, 1], t, panels=1000)
    assert abs(val - 0.25) <= 1e-6


def test_haar_rejects_bad_panels():
    with pytest.raises(ValueError):
        haar_integrate(lambda c: 1.0, abelian_torus(1), panels=0)
