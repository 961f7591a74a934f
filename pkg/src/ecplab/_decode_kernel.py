"""Compiled batch path of the error-correcting-pair decoder.

Mirrors the reference decoder in :mod:`ecplab.ecp` step for step, with the
same pivot rules, so both produce identical outcomes.  Field arithmetic goes
through full lookup tables (fields up to ``gf.TABLE_LIMIT``).
"""

import numpy as np
from numba import njit

OK, KERNEL_EMPTY, ERASURE_AMBIGUOUS, WEIGHT_EXCEEDED, NOT_IN_CODE = 0, 1, 2, 3, 4


@njit(cache=True)
def _rref(R, rows, cols, ADD, MUL, NEG, INV, piv):
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = r
        while i < rows and R[i, c] == 0:
            i += 1
        if i == rows:
            continue
        if i != r:
            for j in range(cols):
                tmp = R[r, j]
                R[r, j] = R[i, j]
                R[i, j] = tmp
        s = INV[R[r, c]]
        if s != 1:
            for j in range(cols):
                R[r, j] = MUL[R[r, j], s]
        for i2 in range(rows):
            if i2 != r:
                f = R[i2, c]
                if f != 0:
                    nf = NEG[f]
                    for j in range(cols):
                        if R[r, j] != 0:
                            R[i2, j] = ADD[R[i2, j], MUL[nf, R[r, j]]]
        piv[r] = c
        r += 1
    return r


@njit(cache=True)
def _decode_one(y, GAB, GA, H, t, ADD, MUL, NEG, INV, S, u, x, Aug, piv, e, out):
    kB, kA, n = GAB.shape
    r = H.shape[0]
    # syndrome-type system S u = 0
    for l in range(kB):
        for i in range(kA):
            acc = 0
            for j in range(n):
                if y[j] != 0:
                    acc = ADD[acc, MUL[GAB[l, i, j], y[j]]]
            S[l, i] = acc
    rank = _rref(S, kB, kA, ADD, MUL, NEG, INV, piv)
    f = -1
    p = 0
    for c in range(kA):
        if p < rank and piv[p] == c:
            p += 1
        else:
            f = c
            break
    if f < 0:
        return KERNEL_EMPTY
    for i in range(kA):
        u[i] = 0
    u[f] = 1
    for i in range(rank):
        u[piv[i]] = NEG[S[i, f]]
    # zero set of x = u G_A
    nJ = 0
    for j in range(n):
        acc = 0
        for i in range(kA):
            if u[i] != 0:
                acc = ADD[acc, MUL[u[i], GA[i, j]]]
        x[j] = acc
    for j in range(n):
        if x[j] == 0:
            nJ += 1
    # H_J e_J = H y
    for i in range(r):
        col = 0
        acc = 0
        for j in range(n):
            if x[j] == 0:
                Aug[i, col] = H[i, j]
                col += 1
            if y[j] != 0:
                acc = ADD[acc, MUL[H[i, j], y[j]]]
        Aug[i, nJ] = acc
    rank = _rref(Aug, r, nJ + 1, ADD, MUL, NEG, INV, piv)
    if rank < nJ or (rank > 0 and piv[rank - 1] == nJ):
        return ERASURE_AMBIGUOUS
    col = 0
    w = 0
    for j in range(n):
        if x[j] == 0:
            e[j] = Aug[col, nJ]
            col += 1
        else:
            e[j] = 0
        if e[j] != 0:
            w += 1
    if w > t:
        return WEIGHT_EXCEEDED
    for j in range(n):
        out[j] = ADD[y[j], NEG[e[j]]]
    for i in range(r):
        acc = 0
        for j in range(n):
            if out[j] != 0:
                acc = ADD[acc, MUL[H[i, j], out[j]]]
        if acc != 0:
            return NOT_IN_CODE
    return OK


def _workspace(GAB, H):
    kB, kA, n = GAB.shape
    r = H.shape[0]
    return (np.zeros((max(kB, 1), max(kA, 1)), np.int64), np.zeros(kA, np.int64),
            np.zeros(n, np.int64), np.zeros((max(r, 1), n + 1), np.int64),
            np.zeros(max(kB, r, n) + 1, np.int64), np.zeros(n, np.int64))


@njit(cache=True)
def decode_batch(Y, GAB, GA, H, t, ADD, MUL, NEG, INV, S, u, x, Aug, piv, e):
    N, n = Y.shape
    words = np.zeros((N, n), np.int64)
    status = np.zeros(N, np.int64)
    for s in range(N):
        status[s] = _decode_one(Y[s], GAB, GA, H, t, ADD, MUL, NEG, INV,
                                S, u, x, Aug, piv, e, words[s])
    return words, status


@njit(cache=True)
def sweep_errors(c, supports, t, q, GAB, GA, H, ADD, MUL, NEG, INV, S, u, x, Aug, piv, e):
    """Decode c + err for every err supported on a row of ``supports`` (rows
    padded with -1) with all nonzero value assignments.  Returns the number
    of patterns tried and the number not decoded back to (c, err)."""
    n = c.shape[0]
    y = np.zeros(n, np.int64)
    err = np.zeros(n, np.int64)
    out = np.zeros(n, np.int64)
    vals = np.zeros(supports.shape[1], np.int64)
    tried = 0
    bad = 0
    for s in range(supports.shape[0]):
        w = 0
        while w < supports.shape[1] and supports[s, w] >= 0:
            w += 1
        for i in range(w):
            vals[i] = 1
        while True:
            for j in range(n):
                err[j] = 0
            for i in range(w):
                err[supports[s, i]] = vals[i]
            for j in range(n):
                y[j] = ADD[c[j], err[j]]
            st = _decode_one(y, GAB, GA, H, t, ADD, MUL, NEG, INV, S, u, x, Aug, piv, e, out)
            tried += 1
            if st != OK:
                bad += 1
            else:
                for j in range(n):
                    if out[j] != c[j] or e[j] != err[j]:
                        bad += 1
                        break
            i = 0
            while i < w:
                vals[i] += 1
                if vals[i] < q:
                    break
                vals[i] = 1
                i += 1
            if i == w:
                break
    return tried, bad
