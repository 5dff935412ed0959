"""Dense linear algebra over the prime field F_p with numpy int64 arrays."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

PRIMES = (2, 3, 5)


class FieldError(ValueError):
    pass


def check_prime(p: int) -> int:
    if p not in PRIMES:
        raise FieldError(f"field size must be one of {PRIMES}, got {p}")
    return p


def to_field(c: Fraction | int, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise FieldError(f"coefficient {c} has a denominator divisible by {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {x : a x = 0}."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    m, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-m[r, f]) % p
    return basis


def is_invertible(a: np.ndarray, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def matpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    n = a.shape[0]
    out = np.eye(n, dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            out = out @ base % p
        base = base @ base % p
        e >>= 1
    return out


def column_space_contains(big: np.ndarray, small: np.ndarray, p: int) -> bool:
    """Is every column of ``small`` in the column span of ``big``?"""
    if small.shape[1] == 0:
        return True
    if big.shape[1] == 0:
        return not np.any(small % p)
    return rank(np.hstack([big, small]), p) == rank(big, p)
