"""Gaussian elimination over GF(2^s)."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .field import FieldCtx


def rank(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a matrix of field values (row-major, plain ints)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    mul, inv = ctx.mul, ctx.inv
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        f = inv(m[r][c])
        m[r] = [mul(f, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                g = m[i][c]
                m[i] = [x ^ mul(g, y) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def vandermonde(ctx: FieldCtx, values: Sequence[int], nrows: int | None = None) -> list[list[int]]:
    """Rows are powers 0..nrows-1 of ``values`` (square by default)."""
    nrows = len(values) if nrows is None else nrows
    pw = ctx.pow
    return [[pw(x, e) for x in values] for e in range(nrows)]


def batched_full_rank(ctx: FieldCtx, mats: np.ndarray) -> np.ndarray:
    """Boolean mask of nonsingular matrices in a stack of shape (N, n, n)."""
    mt = ctx.mul_table
    it = ctx.inv_table
    m = np.array(mats, dtype=np.int64, copy=True)
    N, n, _ = m.shape
    ok = np.ones(N, dtype=bool)
    ar = np.arange(N)
    for c in range(n):
        col = m[:, c:, c]
        has = col != 0
        ok &= has.any(axis=1)
        piv = c + np.argmax(has, axis=1)
        # swap row c with pivot row
        top = m[ar, c].copy()
        m[ar, c] = m[ar, piv]
        m[ar, piv] = top
        pivot_inv = it[m[:, c, c]]
        m[:, c] = mt[m[:, c], pivot_inv[:, None]]
        factors = m[:, :, c].copy()
        factors[:, c] = 0
        m ^= mt[factors[:, :, None], m[:, c][:, None, :]]
    return ok
