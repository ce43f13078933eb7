"""Pure-numpy backend: vectorized over the point batch."""

import numpy as np

_CHUNK = 1 << 19


def phase_mean(coeffs, lo, hi, panels):
    total = 0.0 + 0.0j
    done = 0
    while done < panels:
        count = min(_CHUNK, panels - done)
        idx = np.arange(done, done + count, dtype=np.float64)
        u = lo + (hi - lo) * (idx + 0.5) / panels
        phase = np.zeros_like(u)
        for c in coeffs[::-1]:
            phase = phase * u + c
        total += np.exp(2j * np.pi * phase).sum()
        done += count
    return total / panels


def _bracket_batch(X, Y, bi, bj, bk, bv):
    out = np.zeros_like(X)
    for idx in range(bi.size):
        out[:, bk[idx]] += bv[idx] * X[:, bi[idx]] * Y[:, bj[idx]]
    return out


def bch_batch(X, Y, bi, bj, bk, bv, words, wlen, coeffs):
    Z = X + Y
    for t in range(coeffs.size):
        length = wlen[t]
        V = X if words[t, length - 1] == 0 else Y
        for pos in range(length - 2, -1, -1):
            A = X if words[t, pos] == 0 else Y
            V = _bracket_batch(A, V, bi, bj, bk, bv)
        Z = Z + coeffs[t] * V
    return Z


def second_kind_batch(logs, bi, bj, bk, bv, words, wlen, coeffs):
    P, n = logs.shape
    Y = logs.copy()
    out = np.empty_like(logs)
    for i in range(n):
        out[:, i] = Y[:, i]
        A = np.zeros_like(logs)
        A[:, i] = -Y[:, i]
        Y = bch_batch(A, Y, bi, bj, bk, bv, words, wlen, coeffs)
    return out


def reduce_batch(logs, bi, bj, bk, bv, words, wlen, coeffs, band):
    P, n = logs.shape
    Y = logs.copy()
    out_words = np.zeros((P, n), dtype=np.int64)
    for i in range(n):
        sk = second_kind_batch(Y, bi, bj, bk, bv, words, wlen, coeffs)
        ti = sk[:, i]
        k = np.floor(ti)
        k = np.where(ti - k > 1.0 - band, k + 1.0, k)
        out_words[:, i] = k.astype(np.int64)
        A = np.zeros_like(logs)
        A[:, i] = -k
        Y = bch_batch(Y, A, bi, bj, bk, bv, words, wlen, coeffs)
    coords = second_kind_batch(Y, bi, bj, bk, bv, words, wlen, coeffs)
    coords = np.where(coords > 1.0 - band, 0.0, coords)
    coords = np.maximum(coords, 0.0)
    return coords, out_words
