"""Exact rational linear algebra on small dense matrices.

Everything runs on :class:`fractions.Fraction`; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(a: Sequence[Sequence[int]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def ldlt(a: Sequence[Sequence[int]]) -> tuple[list[int], list[Fraction], Matrix] | None:
    """Symmetric-pivoted LDL^T of a symmetric matrix.

    Returns ``(perm, d, L)`` with ``P A P^t = L diag(d) L^t`` when A is
    positive semidefinite, and ``None`` as soon as a negative direction
    shows up (negative pivot, or a zero pivot with a nonzero off-diagonal
    entry in its row).  The largest remaining diagonal entry is used as
    pivot at each step.
    """
    n = len(a)
    s = to_fractions(a)
    perm = list(range(n))
    L: Matrix = [[Fraction(0)] * n for _ in range(n)]
    d: list[Fraction] = []
    for k in range(n):
        p = max(range(k, n), key=lambda i: s[i][i])
        if p != k:
            s[k], s[p] = s[p], s[k]
            for row in s:
                row[k], row[p] = row[p], row[k]
            perm[k], perm[p] = perm[p], perm[k]
            L[k], L[p] = L[p], L[k]
        piv = s[k][k]
        if piv < 0:
            return None
        if piv == 0:
            if any(s[i][k] != 0 for i in range(k + 1, n)):
                return None
            d.append(Fraction(0))
            L[k][k] = Fraction(1)
            continue
        d.append(piv)
        L[k][k] = Fraction(1)
        for i in range(k + 1, n):
            L[i][k] = s[i][k] / piv
        for i in range(k + 1, n):
            if s[i][k] == 0:
                continue
            f = s[i][k] / piv
            for j in range(k + 1, n):
                s[i][j] -= f * s[k][j]
    return perm, d, L


def is_psd(a: Sequence[Sequence[int]]) -> bool:
    return ldlt(a) is not None


def rref(a: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    m = [list(map(Fraction, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def nullspace(a: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of {x : A x = 0} as primitive integer vectors (RREF order)."""
    if not a:
        return []
    cols = len(a[0])
    m, pivots = rref(to_fractions(a))
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -m[r][f]
        basis.append(primitive(x))
    return basis


def inverse(a: Sequence[Sequence[int]]) -> Matrix | None:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in m]
