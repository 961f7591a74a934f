"""Gaussian elimination over a FieldSpec on integer-encoded matrices."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .gf import FieldSpec


def as_matrix(rows, ncols: int | None = None) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64)
    if m.size == 0:
        return np.zeros((0, ncols if ncols is not None else (m.shape[-1] if m.ndim == 2 else 0)),
                        dtype=np.int64)
    if m.ndim == 1:
        m = m[None, :]
    if m.ndim != 2:
        raise ValueError("expected a matrix")
    if ncols is not None and m.shape[1] != ncols:
        raise ValueError(f"expected {ncols} columns, got {m.shape[1]}")
    return m


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivoting is deterministic: columns left to right, and within a column the
    first row (at or below the current one) with a nonzero entry.
    """
    R = as_matrix(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        if R[r, c] != 1:
            R[r] = F.mul(R[r], F.inv(R[r, c]))
        f = R[:, c].copy()
        f[r] = 0
        others = np.flatnonzero(f)
        if others.size:
            R[others] = F.sub(R[others], F.mul(f[others, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: FieldSpec, M) -> int:
    return len(rref(F, M)[1])


def row_basis(F: FieldSpec, M) -> np.ndarray:
    R, piv = rref(F, M)
    return R[: len(piv)]


def kernel(F: FieldSpec, M, ncols: int | None = None) -> np.ndarray:
    """Basis of the right null space {x : M x = 0}, one row per free column."""
    M = as_matrix(M, ncols)
    n = M.shape[1]
    R, piv = rref(F, M)
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        K[row, f] = 1
        for i, pc in enumerate(piv):
            K[row, pc] = F.neg(R[i, f])
    return K


def solve(F: FieldSpec, M, rhs) -> np.ndarray | None:
    """Unique solution of M x = rhs; None when inconsistent or underdetermined."""
    M = as_matrix(M)
    rhs = np.asarray(rhs, dtype=np.int64).reshape(-1)
    if M.shape[0] != rhs.shape[0]:
        raise ValueError(f"dimension mismatch: {M.shape} vs rhs of length {rhs.shape[0]}")
    n = M.shape[1]
    R, piv = rref(F, np.hstack([M, rhs[:, None]]))
    if n in piv or len(piv) < n:
        return None
    return R[:n, n].copy()


def left_kernel(F: FieldSpec, M) -> np.ndarray:
    """Basis of {x : x M = 0}."""
    M = as_matrix(M)
    return kernel(F, M.T, ncols=M.shape[0])


def columns_independent(F: FieldSpec, M, subsets) -> np.ndarray:
    """For each column subset (rows of ``subsets``), whether those columns of M
    are linearly independent.  Batched elimination, one matrix per subset."""
    M = as_matrix(M)
    subsets = np.asarray(subsets, dtype=np.int64)
    S, w = subsets.shape
    r = M.shape[0]
    if w == 0:
        return np.ones(S, dtype=bool)
    if w > r:
        return np.zeros(S, dtype=bool)
    # batch of r x w matrices
    B = M[:, subsets].transpose(1, 0, 2).copy()
    used = np.zeros((S, r), dtype=bool)
    ok = np.ones(S, dtype=bool)
    idx = np.arange(S)
    for c in range(w):
        cand = (B[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        ok &= has
        piv = np.argmax(cand, axis=1)
        prow = B[idx, piv]
        pval = prow[:, c].copy()
        pval[~has] = 1
        prow = F.mul(prow, F.inv(pval)[:, None])
        prow[~has] = 0
        B[idx, piv] = np.where(has[:, None], prow, B[idx, piv])
        factor = B[:, :, c].copy()
        factor[idx, piv] = 0
        factor[~has] = 0
        B = F.sub(B, F.mul(factor[:, :, None], prow[:, None, :]))
        used[idx[has], piv[has]] = True
    return ok


def all_subsets_independent(F: FieldSpec, M, w: int, chunk: int = 20000) -> bool:
    """True iff every set of w columns of M is linearly independent."""
    M = as_matrix(M)
    n = M.shape[1]
    if w == 0:
        return True
    if w > M.shape[0]:
        return False
    it = combinations(range(n), w)
    while True:
        block = [s for _, s in zip(range(chunk), it)]
        if not block:
            return True
        if not columns_independent(F, M, np.array(block)).all():
            return False
