"""numpy kernels for exact dense linear algebra over F_p.

All arrays are ``int64`` with entries reduced into ``[0, p)``.  For p up to
~3e9 the intermediate products stay below 2**63, so everything here is exact.
The batch kernel reduces many small matrices at once; it is what makes
exhaustive point scans over P^n(F_q) cheap.
"""

from __future__ import annotations

import numpy as np


def inverse_table(p: int) -> np.ndarray:
    """Table of multiplicative inverses mod p (index 0 unused, set to 0)."""
    t = np.zeros(p, dtype=np.int64)
    if p > 1:
        t[1] = 1
        # t[i] = -(p//i) * t[p%i] mod p, the standard linear-time recurrence.
        for i in range(2, p):
            t[i] = (-(p // i) * t[p % i]) % p
    return t


def rank(a: np.ndarray, p: int) -> int:
    """Rank of ``a`` over F_p.  ``a`` is copied; elimination below pivots only."""
    a = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        factors = a[r + 1 :, c]
        nzf = np.nonzero(factors)[0]
        if nzf.size:
            rows_idx = r + 1 + nzf
            a[rows_idx, c:] = (a[rows_idx, c:] - factors[nzf, None] * a[r, c:]) % p
        r += 1
    return r


def rref(a: np.ndarray, p: int):
    """Reduced row echelon form over F_p.

    Returns ``(R, pivots)`` where zero rows are kept (same shape as input).
    Pivot choice is the first nonzero entry in column order, so the output is
    deterministic.
    """
    a = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - a[others, c][:, None] * a[r][None, :]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def batch_rank(mats: np.ndarray, p: int, inv_table: np.ndarray | None = None) -> np.ndarray:
    """Ranks of a stack of matrices over F_p.

    ``mats`` has shape ``(k, rows, cols)`` and is consumed (eliminated in
    place on a copy).  Uses a Gauss-Jordan sweep over columns with per-matrix
    pivot bookkeeping, fully vectorized over the batch axis.
    """
    a = np.array(mats, dtype=np.int64, copy=True) % p
    k, rows, cols = a.shape
    if k == 0 or rows == 0 or cols == 0:
        return np.zeros(k, dtype=np.int64)
    if inv_table is None:
        inv_table = inverse_table(p)
    used = np.zeros((k, rows), dtype=bool)
    out = np.zeros(k, dtype=np.int64)
    ar = np.arange(k)
    for c in range(cols):
        colvals = a[:, :, c]
        cand = (colvals != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        pv = colvals[ar, piv]
        pinv = inv_table[pv % p]
        factor = colvals * pinv[:, None] % p
        factor[ar, piv] = 0
        factor[~has] = 0
        pivrows = a[ar, piv]
        a -= factor[:, :, None] * pivrows[:, None, :]
        a %= p
        used[ar[has], piv[has]] = True
        out += has
    return out
