"""Backend selection for the recurrence kernel.

The compiled Cython kernel is preferred when its extension built; the
numpy fallback is bit-compatible (same operation order).  Set
HODGECONV_FORCE_NUMPY=1 to skip the compiled kernel, e.g. for the
backend benchmark.
"""

import os

import numpy as np

from . import laguerre_np

if os.environ.get("HODGECONV_FORCE_NUMPY"):
    _impl = None
else:
    try:
        from . import laguerre_cy as _impl
    except ImportError:
        _impl = None

BACKEND = "cython" if _impl is not None else "numpy"


def backend_name() -> str:
    return BACKEND


def laguerre_basis(L, x, order: int, scale: float = 1.0) -> np.ndarray:
    """t_p = T_p(L/scale) x stacked over p = 0..order-1.

    L is a scipy CSR matrix (dim x dim), x a float64 array of shape
    (dim, channels); returns (order, dim, channels).
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    if _impl is None:
        return laguerre_np.laguerre_basis_csr(L.indptr, L.indices, L.data, x, order, scale)
    return _impl.laguerre_basis_csr(
        np.ascontiguousarray(L.indptr, dtype=np.int32),
        np.ascontiguousarray(L.indices, dtype=np.int32),
        np.ascontiguousarray(L.data, dtype=np.float64),
        x,
        order,
        scale,
    )


def laguerre_basis_numpy(L, x, order: int, scale: float = 1.0) -> np.ndarray:
    """Always-numpy variant, used by the benchmark and backend tests."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    return laguerre_np.laguerre_basis_csr(L.indptr, L.indices, L.data, x, order, scale)
