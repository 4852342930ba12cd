# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gauss-Jordan elimination over Z/pZ for word-size primes."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_mod(int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` in place to reduced row echelon form modulo ``p``.

    Entries must lie in ``[0, p)`` and ``p`` must be below ``2**31`` so that
    products fit in 64 bits. Returns the list of pivot columns.
    """
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, nnz, t
    cdef int64_t inv, f, v
    cdef cnp.ndarray[cnp.intp_t, ndim=1] support_arr = np.empty(n, dtype=np.intp)
    cdef cnp.intp_t[::1] support = support_arr
    pivots = []
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, n):
                v = a[k, j]
                a[k, j] = a[r, j]
                a[r, j] = v
        inv = _inv_mod(a[r, c], p)
        nnz = 0
        for j in range(c, n):
            if a[r, j] != 0:
                if inv != 1:
                    a[r, j] = (a[r, j] * inv) % p
                support[nnz] = j
                nnz += 1
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            f = p - f
            for t in range(nnz):
                j = support[t]
                a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots
