"""Hot numeric kernels with two interchangeable backends.

The numba backend compiles per-point loops with @njit; the numpy backend runs
the same algorithms as vectorized array code.  Selection: set
NILDILATE_BACKEND=numpy (or =numba) in the environment; default "auto" takes
numba when importable and falls back to numpy.  `benchmarks/bench_backends.py`
compares the two.

All kernels are float-mode only: the exact-rational code paths have no hot
loops and stay in plain Python.
"""

import os

_requested = os.environ.get("NILDILATE_BACKEND", "auto").lower()
if _requested not in {"auto", "numba", "numpy"}:
    raise RuntimeError(f"NILDILATE_BACKEND must be auto|numba|numpy, got {_requested!r}")

if _requested == "numpy":
    from . import numpy_impl as _impl
    BACKEND = "numpy"
else:
    try:
        from . import numba_impl as _impl
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import numpy_impl as _impl
        BACKEND = "numpy"


def backend_name():
    return BACKEND


def _unpack(tables):
    return (tables["bi"], tables["bj"], tables["bk"], tables["bv"],
            tables["words"], tables["wlen"], tables["coeffs"])


def phase_mean(coeffs, lo, hi, panels):
    """Midpoint mean of exp(2 pi i p(u)) over [lo, hi], p given by `coeffs`."""
    import numpy as np
    return _impl.phase_mean(np.asarray(coeffs, dtype=float), float(lo), float(hi),
                            int(panels))


def bch_batch(X, Y, tables):
    return _impl.bch_batch(X, Y, *_unpack(tables))


def second_kind_batch(logs, tables):
    return _impl.second_kind_batch(logs, *_unpack(tables))


def reduce_batch(logs, tables, band=1e-9):
    """Fundamental-domain coordinates and integer words for a batch of logs."""
    return _impl.reduce_batch(logs, *_unpack(tables), band)
