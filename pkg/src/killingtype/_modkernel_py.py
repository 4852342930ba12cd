"""Pure-Python (numpy) twin of the compiled modular elimination kernel."""

from __future__ import annotations

import numpy as np


def rref_mod(a: np.ndarray, p: int) -> list[int]:
    """Reduce ``a`` in place to reduced row echelon form modulo ``p``.

    Same contract as the compiled kernel: int64 entries in ``[0, p)``,
    ``p < 2**31``. Returns the pivot columns.
    """
    m, n = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k], c:] = a[[k, r], c:]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        factors = a[:, c].copy()
        factors[r] = 0
        rows = np.flatnonzero(factors)
        if rows.size:
            support = c + np.flatnonzero(a[r, c:])
            block = a[np.ix_(rows, support)]
            block -= np.outer(factors[rows], a[r, support])
            a[np.ix_(rows, support)] = block % p
        pivots.append(c)
        r += 1
    return pivots
