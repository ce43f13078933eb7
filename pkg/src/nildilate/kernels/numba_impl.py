"""Numba backend: @njit per-point loops, no temporary batch arrays."""

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi


@njit(cache=True)
def phase_mean(coeffs, lo, hi, panels):
    acc_re = 0.0
    acc_im = 0.0
    h = (hi - lo) / panels
    for p in range(panels):
        u = lo + h * (p + 0.5)
        phase = 0.0
        for j in range(coeffs.size - 1, -1, -1):
            phase = phase * u + coeffs[j]
        acc_re += np.cos(TWO_PI * phase)
        acc_im += np.sin(TWO_PI * phase)
    return complex(acc_re / panels, acc_im / panels)


@njit(cache=True)
def _bracket_into(x, y, out, bi, bj, bk, bv):
    for a in range(out.size):
        out[a] = 0.0
    for idx in range(bi.size):
        out[bk[idx]] += bv[idx] * x[bi[idx]] * y[bj[idx]]


@njit(cache=True)
def _bch_into(x, y, out, tmp1, tmp2, bi, bj, bk, bv, words, wlen, coeffs):
    n = x.size
    for a in range(n):
        out[a] = x[a] + y[a]
    for t in range(coeffs.size):
        length = wlen[t]
        if words[t, length - 1] == 0:
            for a in range(n):
                tmp1[a] = x[a]
        else:
            for a in range(n):
                tmp1[a] = y[a]
        for pos in range(length - 2, -1, -1):
            if words[t, pos] == 0:
                _bracket_into(x, tmp1, tmp2, bi, bj, bk, bv)
            else:
                _bracket_into(y, tmp1, tmp2, bi, bj, bk, bv)
            tmp1, tmp2 = tmp2, tmp1
        c = coeffs[t]
        for a in range(n):
            out[a] += c * tmp1[a]


@njit(cache=True)
def _second_kind_into(x, out, work, step, tmp1, tmp2, tmp3,
                      bi, bj, bk, bv, words, wlen, coeffs):
    n = x.size
    for a in range(n):
        work[a] = x[a]
    for i in range(n):
        out[i] = work[i]
        for a in range(n):
            step[a] = 0.0
        step[i] = -work[i]
        _bch_into(step, work, tmp3, tmp1, tmp2, bi, bj, bk, bv, words, wlen, coeffs)
        for a in range(n):
            work[a] = tmp3[a]


@njit(cache=True)
def bch_batch(X, Y, bi, bj, bk, bv, words, wlen, coeffs):
    P, n = X.shape
    out = np.empty_like(X)
    tmp1 = np.empty(n)
    tmp2 = np.empty(n)
    row = np.empty(n)
    for p in range(P):
        _bch_into(X[p], Y[p], row, tmp1, tmp2, bi, bj, bk, bv, words, wlen, coeffs)
        for a in range(n):
            out[p, a] = row[a]
    return out


@njit(cache=True)
def second_kind_batch(logs, bi, bj, bk, bv, words, wlen, coeffs):
    P, n = logs.shape
    out = np.empty_like(logs)
    work = np.empty(n)
    step = np.empty(n)
    tmp1 = np.empty(n)
    tmp2 = np.empty(n)
    tmp3 = np.empty(n)
    row = np.empty(n)
    for p in range(P):
        _second_kind_into(logs[p], row, work, step, tmp1, tmp2, tmp3,
                          bi, bj, bk, bv, words, wlen, coeffs)
        for a in range(n):
            out[p, a] = row[a]
    return out


@njit(cache=True)
def reduce_batch(logs, bi, bj, bk, bv, words, wlen, coeffs, band):
    P, n = logs.shape
    coords = np.empty_like(logs)
    out_words = np.zeros((P, n), dtype=np.int64)
    y = np.empty(n)
    sk = np.empty(n)
    work = np.empty(n)
    step = np.empty(n)
    tmp1 = np.empty(n)
    tmp2 = np.empty(n)
    tmp3 = np.empty(n)
    for p in range(P):
        for a in range(n):
            y[a] = logs[p, a]
        for i in range(n):
            _second_kind_into(y, sk, work, step, tmp1, tmp2, tmp3,
                              bi, bj, bk, bv, words, wlen, coeffs)
            k = np.floor(sk[i])
            if sk[i] - k > 1.0 - band:
                k += 1.0
            out_words[p, i] = np.int64(k)
            if k != 0.0:
                for a in range(n):
                    step[a] = 0.0
                step[i] = -k
                _bch_into(y, step, tmp3, tmp1, tmp2, bi, bj, bk, bv, words, wlen, coeffs)
                for a in range(n):
                    y[a] = tmp3[a]
        _second_kind_into(y, sk, work, step, tmp1, tmp2, tmp3,
                          bi, bj, bk, bv, words, wlen, coeffs)
        for a in range(n):
            v = sk[a]
            if v > 1.0 - band:
                v = 0.0
            elif v < 0.0:
                v = 0.0
            coords[p, a] = v
    return coords, out_words
