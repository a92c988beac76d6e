"""Compiled inner loops for search runs in which nothing can be found.

When no active coordinate is marked, every measurement is uniform and every
verification fails, so a run only advances the tapes and the meter.  These
kernels replay exactly the draws and charges of the general code path (the
tests compare the two on every field).  Party codes: 0 none, 1 Alice, 2 Bob.
"""
from __future__ import annotations

import numpy as np
from numba import njit

_G = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0


@njit(cache=True)
def _word(key, c):
    z = key + c * _G
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def _bitlen(v):
    b = 0
    while v > 0:
        b += 1
        v >>= 1
    return b


@njit(cache=True)
def _uniform(key, c, bound):
    """Returns (value, new counter, bits used); same rule as RandomTape.uniform."""
    if bound <= 1:
        return 0, c, 0
    b = _bitlen(bound - 1)
    sh = np.uint64(64 - b)
    used = 0
    ub = np.uint64(bound)
    while True:
        c += _ONE
        used += b
        v = _word(key, c) >> sh
        if v < ub:
            return np.int64(v), c, used


@njit(cache=True)
def _find_one(key, c, n, budget, m_cap, excl, it_first, it_last, it_inner, it_wrap,
              v_first, v_last, v_inner, rounds, last):
    bits = 0
    iters = 0
    checks = 0
    m = 1
    used = 0
    while used < budget:
        r, c, b = _uniform(key, c, m)
        bits += b
        if r > budget - used:
            r = budget - used
        if r > 0:
            used += r
            iters += r
            if last != it_first:
                rounds += 1
            rounds += it_inner * r + it_wrap * (r - 1)
            last = it_last
        else:
            used += 1
        c += _ONE
        bits += 53
        u = np.float64(_word(key, c) >> _S11) * _INV53
        i = np.int64(u * n)
        if i >= n:
            i = n - 1
        if excl[i] == 0:
            checks += 1
            if v_first != 0:
                if last != v_first:
                    rounds += 1
                rounds += v_inner
                last = v_last
        m = min((m * 9 + 7) // 8, m_cap)
    return c, bits, iters, checks, rounds, last


@njit(cache=True)
def find_one_unmarked(key, c, n, budget, m_cap, excl, it_first, it_last, it_inner, it_wrap,
                      v_first, v_last, v_inner, rounds, last):
    return _find_one(key, c, n, budget, m_cap, excl, it_first, it_last, it_inner, it_wrap,
                     v_first, v_last, v_inner, rounds, last)


@njit(cache=True)
def find_exact_unmarked(skey, sc, akey, ac, n, gamma, n_rounds, excl_root, budget, m_cap,
                        it_first, it_last, it_inner, it_wrap, v_first, v_last, v_inner,
                        rounds, last):
    full = n // gamma
    rem = n - full * gamma
    s = full + (1 if rem else 0)
    sub = np.zeros(s, dtype=np.uint8)
    sbits = 0
    abits = 0
    iters = 0
    checks = 0
    for _ in range(n_rounds):
        for blk in range(full):
            v, sc, b = _uniform(skey, sc, gamma)
            sbits += b
            sub[blk] = excl_root[blk * gamma + v]
        if rem:
            v, sc, b = _uniform(skey, sc, rem)
            sbits += b
            sub[full] = excl_root[full * gamma + v]
        ac, b, it, ch, rounds, last = _find_one(akey, ac, s, budget, m_cap, sub, it_first, it_last,
                                                it_inner, it_wrap, v_first, v_last, v_inner,
                                                rounds, last)
        abits += b
        iters += it
        checks += ch
    return sc, sbits, ac, abits, iters, checks, rounds, last
