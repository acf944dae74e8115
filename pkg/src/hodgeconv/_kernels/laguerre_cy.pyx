# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernel: t_p = T_p(L/s) x without materializing
any matrix polynomial.  One fused CSR matvec per recurrence step."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def laguerre_basis_csr(
    cnp.int32_t[::1] indptr,
    cnp.int32_t[::1] indices,
    double[::1] data,
    double[:, ::1] x,
    int order,
    double scale,
):
    cdef Py_ssize_t dim = x.shape[0]
    cdef Py_ssize_t channels = x.shape[1]
    out_arr = np.empty((order, dim, channels), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t r, c, j, p
    cdef double acc
    cdef double inv_scale = 1.0 / scale
    cdef double two_p_plus_1, inv_p_plus_1, pf

    with nogil:
        for r in range(dim):
            for c in range(channels):
                out[0, r, c] = x[r, c]
        if order > 1:
            # t_1 = x - (L/s) x
            for r in range(dim):
                for c in range(channels):
                    acc = 0.0
                    for j in range(indptr[r], indptr[r + 1]):
                        acc += data[j] * x[indices[j], c]
                    out[1, r, c] = x[r, c] - acc * inv_scale
        for p in range(1, order - 1):
            two_p_plus_1 = 2.0 * p + 1.0
            inv_p_plus_1 = 1.0 / (p + 1.0)
            pf = <double> p
            for r in range(dim):
                for c in range(channels):
                    acc = 0.0
                    for j in range(indptr[r], indptr[r + 1]):
                        acc += data[j] * out[p, indices[j], c]
                    out[p + 1, r, c] = (
                        two_p_plus_1 * out[p, r, c] - acc * inv_scale - pf * out[p - 1, r, c]
                    ) * inv_p_plus_1
    return out_arr
