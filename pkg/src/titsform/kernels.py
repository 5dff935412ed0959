"""Compiled inner loops for the realization search.

A representation is packed as: ``dims[v]``, arrow endpoints ``src[a]``,
``tgt[a]`` and ``mats[a, :dims[tgt], :dims[src]]`` (zero padded).  The
numpy implementation in :mod:`realize` computes the same things and is
used to cross-check these kernels in the test suite.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def rank_mod(a, p):
    m = a.copy() % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = 1
        for x in range(1, p):
            if (m[r, c] * x) % p == 1:
                inv = x
        for j in range(cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(cols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
        r += 1
    return r


@njit(cache=True)
def nullspace_mod(a, p):
    m = a.copy() % p
    rows, cols = m.shape
    pivcol = np.full(rows, -1, np.int64)
    is_piv = np.zeros(cols, np.bool_)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = 1
        for x in range(1, p):
            if (m[r, c] * x) % p == 1:
                inv = x
        for j in range(cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(cols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivcol[r] = c
        is_piv[c] = True
        r += 1
    nfree = cols - r
    basis = np.zeros((nfree, cols), np.int64)
    k = 0
    for f in range(cols):
        if is_piv[f]:
            continue
        basis[k, f] = 1
        for i in range(r):
            basis[k, pivcol[i]] = (-m[i, f]) % p
        k += 1
    return basis


@njit(cache=True)
def end_basis(dims, src, tgt, mats, p):
    """Basis of End(X) as rows of length sum d(v)^2 (row-major blocks)."""
    nv = dims.shape[0]
    off = np.zeros(nv + 1, np.int64)
    for v in range(nv):
        off[v + 1] = off[v] + dims[v] * dims[v]
    nvars = off[nv]
    nrows = 0
    for a in range(src.shape[0]):
        nrows += dims[tgt[a]] * dims[src[a]]
    sysm = np.zeros((max(nrows, 1), nvars), np.int64)
    row = 0
    for a in range(src.shape[0]):
        s = src[a]
        t = tgt[a]
        ds = dims[s]
        dt = dims[t]
        # (phi_t X - X phi_s)[i, j]
        for i in range(dt):
            for j in range(ds):
                for k in range(dt):
                    sysm[row, off[t] + i * dt + k] += mats[a, k, j]
                for k in range(ds):
                    sysm[row, off[s] + k * ds + j] -= mats[a, i, k]
                row += 1
    return nullspace_mod(sysm, p), off


@njit(cache=True)
def _block(vec, off, v, d):
    b = np.zeros((d, d), np.int64)
    for i in range(d):
        for j in range(d):
            b[i, j] = vec[off[v] + i * d + j]
    return b


@njit(cache=True)
def _mul(a, b, p):
    n, m = a.shape
    k = b.shape[1]
    out = np.zeros((n, k), np.int64)
    for i in range(n):
        for j in range(m):
            x = a[i, j]
            if x:
                for l in range(k):
                    out[i, l] += x * b[j, l]
    for i in range(n):
        for l in range(k):
            out[i, l] %= p
    return out


@njit(cache=True)
def _matpow(a, e, p):
    n = a.shape[0]
    out = np.eye(n, dtype=np.int64)
    base = a % p
    while e > 0:
        if e & 1:
            out = _mul(out, base, p)
        base = _mul(base, base, p)
        e >>= 1
    return out


@njit(cache=True)
def fitting_ranks(vec, dims, off, p):
    """rank of phi_v^N at every vertex, N = total dimension."""
    nv = dims.shape[0]
    N = 0
    for v in range(nv):
        N += dims[v]
    ranks = np.zeros(nv, np.int64)
    for v in range(nv):
        d = dims[v]
        if d > 0:
            ranks[v] = rank_mod(_matpow(_block(vec, off, v, d), N, p), p)
    return ranks


@njit(cache=True)
def _splits(ranks, dims):
    tot = 0
    full = True
    for v in range(dims.shape[0]):
        tot += ranks[v]
        if ranks[v] != dims[v]:
            full = False
    return tot != 0 and not full


@njit(cache=True)
def find_split(basis, dims, off, p, limit):
    """Coefficients of an endomorphism that is neither nilpotent nor
    invertible.  Returns (status, coeffs): status 0 = End local,
    1 = split found, 2 = enumeration over ``limit``."""
    k = basis.shape[0]
    nvars = basis.shape[1]
    coeffs = np.zeros(k, np.int64)
    if k <= 1:
        return 0, coeffs
    for i in range(k):
        if _splits(fitting_ranks(basis[i], dims, off, p), dims):
            coeffs[i] = 1
            return 1, coeffs
    total = 1
    for i in range(k):
        total *= p
        if total > limit:
            return 2, coeffs
    vec = np.zeros(nvars, np.int64)
    for code in range(1, total):
        c = code
        for i in range(k):
            coeffs[i] = c % p
            c //= p
        for j in range(nvars):
            vec[j] = 0
        for i in range(k):
            if coeffs[i]:
                for j in range(nvars):
                    vec[j] += coeffs[i] * basis[i, j]
        for j in range(nvars):
            vec[j] %= p
        if _splits(fitting_ranks(vec, dims, off, p), dims):
            return 1, coeffs
    return 0, coeffs


def pack(dims, src, tgt, matrices):
    dims = np.asarray(dims, dtype=np.int64)
    md = max(1, int(dims.max()) if dims.size else 1)
    out = np.zeros((len(matrices), md, md), dtype=np.int64)
    for a, m in enumerate(matrices):
        r, c = m.shape
        out[a, :r, :c] = m
    return dims, np.asarray(src, dtype=np.int64), np.asarray(tgt, dtype=np.int64), out
