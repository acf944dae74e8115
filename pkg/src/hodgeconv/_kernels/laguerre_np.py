"""Pure-numpy backend for the polynomial recurrence kernel."""

import numpy as np
import scipy.sparse as sp


def laguerre_basis_csr(indptr, indices, data, x, order, scale):
    """Stack t_p = T_p(L / scale) x for p = 0..order-1.

    Mirrors the compiled kernel: CSR operator given by (indptr, indices,
    data), x of shape (dim, channels), output (order, dim, channels).
    """
    dim, channels = x.shape
    L = sp.csr_matrix((data, indices, indptr), shape=(dim, dim))
    out = np.empty((order, dim, channels), dtype=np.float64)
    out[0] = x
    if order == 1:
        return out
    lx = (L @ x) / scale
    out[1] = x - lx
    for p in range(1, order - 1):
        lt = (L @ out[p]) / scale
        out[p + 1] = ((2 * p + 1) * out[p] - lt - p * out[p - 1]) / (p + 1)
    return out
