"""Compiled linear-chain inference.

Shapes: ``E`` is (n, L) emission scores, ``T`` is (L + 1, L) transition
scores whose last row holds BOS -> label scores. Sums over labels use a
per-position max shift, so only L exponentials are taken per position.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _shifted_exp(v, out):
    m = v.max()
    if m == -np.inf:
        out[:] = 0.0
        return m
    for j in range(v.shape[0]):
        out[j] = np.exp(v[j] - m)
    return m


@njit(cache=True)
def forward(E, T):
    """Log forward table ``alpha`` (n, L) and log Z."""
    n, L = E.shape
    alpha = np.empty((n, L))
    bos = T.shape[0] - 1
    for j in range(L):
        alpha[0, j] = T[bos, j] + E[0, j]
    tmax = T[:bos].max()
    expT = np.exp(T[:bos] - tmax)
    p = np.empty(L)
    for i in range(1, n):
        m = _shifted_exp(alpha[i - 1], p)
        for j in range(L):
            s = 0.0
            for k in range(L):
                s += p[k] * expT[k, j]
            alpha[i, j] = (np.log(s) if s > 0.0 else -np.inf) + m + tmax + E[i, j]
    last = alpha[n - 1]
    m = _shifted_exp(last, p)
    return alpha, np.log(p.sum()) + m


@njit(cache=True)
def backward(E, T):
    """Log backward table ``beta`` (n, L); ``beta[n-1] == 0``."""
    n, L = E.shape
    bos = T.shape[0] - 1
    beta = np.zeros((n, L))
    tmax = T[:bos].max()
    expT = np.exp(T[:bos] - tmax)
    v = np.empty(L)
    q = np.empty(L)
    for i in range(n - 2, -1, -1):
        for j in range(L):
            v[j] = E[i + 1, j] + beta[i + 1, j]
        m = _shifted_exp(v, q)
        for k in range(L):
            s = 0.0
            for j in range(L):
                s += expT[k, j] * q[j]
            beta[i, k] = (np.log(s) if s > 0.0 else -np.inf) + m + tmax
    return beta


@njit(cache=True)
def marginals(E, T):
    """log Z, unary marginals (n, L) and pair marginals (n, L + 1, L).

    ``pair[0]`` has mass only in the BOS row; ``pair[i]`` for i >= 1 is
    P(y[i-1] = k, y[i] = j).
    """
    n, L = E.shape
    bos = T.shape[0] - 1
    alpha, logz = forward(E, T)
    beta = backward(E, T)
    unary = np.empty((n, L))
    for i in range(n):
        for j in range(L):
            unary[i, j] = np.exp(alpha[i, j] + beta[i, j] - logz)
    pair = np.zeros((n, L + 1, L))
    for j in range(L):
        pair[0, bos, j] = unary[0, j]
    for i in range(1, n):
        for k in range(L):
            for j in range(L):
                pair[i, k, j] = np.exp(alpha[i - 1, k] + T[k, j] + E[i, j] + beta[i, j] - logz)
    return logz, unary, pair


@njit(cache=True)
def batch_expectations(E, offsets, T):
    """Forward-backward over many sequences stacked row-wise in ``E``.

    Returns per-sequence log Z, unary marginals aligned with the rows of
    ``E``, and pair marginals summed over all positions of all sequences
    (BOS row included).
    """
    N, L = E.shape
    bos = T.shape[0] - 1
    M = offsets.shape[0] - 1
    logz = np.empty(M)
    unary = np.empty((N, L))
    pair = np.zeros((L + 1, L))
    tmax = T[:bos].max()
    expT = np.exp(T[:bos] - tmax)
    p = np.empty(L)
    q = np.empty(L)
    v = np.empty(L)
    for s in range(M):
        a0, a1 = offsets[s], offsets[s + 1]
        n = a1 - a0
        if n == 0:
            logz[s] = 0.0
            continue
        alpha = np.empty((n, L))
        beta = np.zeros((n, L))
        shift = np.empty(n)  # max shift applied to alpha[i] when stored as p
        for j in range(L):
            alpha[0, j] = T[bos, j] + E[a0, j]
        for i in range(1, n):
            m = _shifted_exp(alpha[i - 1], p)
            for j in range(L):
                acc = 0.0
                for k in range(L):
                    acc += p[k] * expT[k, j]
                alpha[i, j] = (np.log(acc) if acc > 0.0 else -np.inf) + m + tmax + E[a0 + i, j]
        m = _shifted_exp(alpha[n - 1], p)
        z = np.log(p.sum()) + m
        logz[s] = z
        for i in range(n - 2, -1, -1):
            for j in range(L):
                v[j] = E[a0 + i + 1, j] + beta[i + 1, j]
            m = _shifted_exp(v, q)
            for k in range(L):
                acc = 0.0
                for j in range(L):
                    acc += expT[k, j] * q[j]
                beta[i, k] = (np.log(acc) if acc > 0.0 else -np.inf) + m + tmax
        for i in range(n):
            for j in range(L):
                unary[a0 + i, j] = np.exp(alpha[i, j] + beta[i, j] - z)
        for j in range(L):
            pair[bos, j] += unary[a0, j]
        # pair[k, j] at i = exp(alpha[i-1,k] - ma) * expT[k,j] * exp(E + beta - mb) * exp(ma + mb + tmax - z)
        for i in range(1, n):
            ma = _shifted_exp(alpha[i - 1], p)
            for j in range(L):
                v[j] = E[a0 + i, j] + beta[i, j]
            mb = _shifted_exp(v, q)
            c = np.exp(ma + mb + tmax - z)
            if c == 0.0:
                continue
            for k in range(L):
                pk = p[k] * c
                for j in range(L):
                    pair[k, j] += pk * expT[k, j] * q[j]
    return logz, unary, pair


@njit(cache=True)
def viterbi(E, T):
    """Max-score path; ties resolve to the lowest label index."""
    n, L = E.shape
    bos = T.shape[0] - 1
    delta = np.empty(L)
    nxt = np.empty(L)
    back = np.zeros((n, L), dtype=np.int64)
    for j in range(L):
        delta[j] = T[bos, j] + E[0, j]
    for i in range(1, n):
        for j in range(L):
            best = -np.inf
            arg = 0
            for k in range(L):
                s = delta[k] + T[k, j]
                if s > best:
                    best = s
                    arg = k
            nxt[j] = best + E[i, j]
            back[i, j] = arg
        delta[:] = nxt
    path = np.empty(n, dtype=np.int64)
    best = -np.inf
    arg = 0
    for j in range(L):
        if delta[j] > best:
            best = delta[j]
            arg = j
    path[n - 1] = arg
    for i in range(n - 1, 0, -1):
        path[i - 1] = back[i, path[i]]
    return path, best


@njit(cache=True)
def viterbi_batch(E, offsets, T):
    N = E.shape[0]
    out = np.empty(N, dtype=np.int64)
    for s in range(offsets.shape[0] - 1):
        a0, a1 = offsets[s], offsets[s + 1]
        if a1 > a0:
            path, _ = viterbi(E[a0:a1], T)
            out[a0:a1] = path
    return out


@njit(cache=True)
def gold_scores(E, offsets, y, T):
    """Per-sequence score of the labels ``y`` (stacked like ``E``)."""
    bos = T.shape[0] - 1
    M = offsets.shape[0] - 1
    out = np.zeros(M)
    for s in range(M):
        prev = bos
        acc = 0.0
        for r in range(offsets[s], offsets[s + 1]):
            acc += T[prev, y[r]] + E[r, y[r]]
            prev = y[r]
        out[s] = acc
    return out
