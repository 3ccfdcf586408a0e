# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Sturm-sequence eigenvalue counts for symmetric tridiagonal matrices."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def sturm_counts(const double[::1] diag, const double[::1] off2, const double[::1] shifts):
    """Number of eigenvalues below each shift.

    ``off2`` holds the squared off-diagonal entries (length n-1).
    """
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t ns = shifts.shape[0]
    cdef Py_ssize_t i, s
    cdef double q, x
    cdef double tiny = 1e-300
    cdef long count
    out = np.zeros(ns, dtype=np.int64)
    cdef cnp.int64_t[::1] res = out
    for s in range(ns):
        x = shifts[s]
        q = diag[0] - x
        count = 0
        if q < 0:
            count += 1
        for i in range(1, n):
            if q == 0.0:
                q = tiny
            q = diag[i] - x - off2[i - 1] / q
            if q < 0:
                count += 1
        res[s] = count
    return out
