"""Backend parity: the numba and numpy kernels compute the same thing."""

import os
import subprocess
import sys

import numpy as np
import pytest

from nildilate.kernels import backend_name, numpy_impl
from nildilate.presets import filiform4, heisenberg3

try:
    from nildilate.kernels import numba_impl
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba backend unavailable")


def _tables(algebra):
    t = algebra.float_tables()
    return (t["bi"], t["bj"], t["bk"], t["bv"], t["words"], t["wlen"], t["coeffs"])


def test_phase_mean_backends_agree():
    coeffs = np.array([0.3, 2.0, 5.0, -1.5])
    a = numpy_impl.phase_mean(coeffs, 0.0, 1.0, 4096)
    b = numba_impl.phase_mean(coeffs, 0.0, 1.0, 4096)
    assert abs(a - b) <= 1e-12


def test_bch_batch_backends_agree():
    rng = np.random.default_rng(0)
    for algebra in (heisenberg3(), filiform4()):
        X = rng.normal(size=(64, algebra.dim))
        Y = rng.normal(size=(64, algebra.dim))
        a = numpy_impl.bch_batch(X, Y, *_tables(algebra))
        b = numba_impl.bch_batch(X, Y, *_tables(algebra))
        assert np.allclose(a, b, atol=1e-12)
        # and both agree with the scalar implementation
        for i in range(0, 64, 16):
            assert np.allclose(a[i], algebra.bch(X[i], Y[i]), atol=1e-12)


def test_reduce_batch_backends_agree():
    rng = np.random.default_rng(1)
    for algebra in (heisenberg3(), filiform4()):
        logs = rng.normal(scale=20.0, size=(128, algebra.dim))
        ca, wa = numpy_impl.reduce_batch(logs, *_tables(algebra), 1e-9)
        cb, wb = numba_impl.reduce_batch(logs, *_tables(algebra), 1e-9)
        assert np.allclose(ca, cb, atol=1e-9)
        assert np.array_equal(wa, wb)
        assert (ca >= 0.0).all() and (ca < 1.0).all()


def test_second_kind_batch_backends_agree():
    rng = np.random.default_rng(2)
    algebra = heisenberg3()
    logs = rng.normal(size=(32, 3))
    a = numpy_impl.second_kind_batch(logs, *_tables(algebra))
    b = numba_impl.second_kind_batch(logs, *_tables(algebra))
    assert np.allclose(a, b, atol=1e-12)


def test_backend_env_flag():
    code = ("import nildilate.kernels as k; print(k.backend_name())")
    for want in ("numpy", "numba"):
        env = dict(os.environ, NILDILATE_BACKEND=want)
        out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                             text=True, env=env, check=True)
        assert out.stdout.strip() == want
    env = dict(os.environ, NILDILATE_BACKEND="bogus")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env)
    assert out.returncode != 0


def test_backend_is_reported():
    assert backend_name() in ("numba", "numpy")
