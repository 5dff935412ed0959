"""Integral unit forms q(x) = sum x_i^2 + sum_{i<j} q_ij x_i x_j.

Vectors are plain tuples of Python ints (arbitrary precision, so nothing
can silently wrap).  The symmetric bilinear form is the polarization
q(x, y) = q(x + y) - q(x) - q(y), which makes q(e_i, e_j) = q_ij and
q(x, x) = 2 q(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

IntVector = tuple[int, ...]


class DimensionError(ValueError):
    pass


def unit_vector(n: int, i: int) -> IntVector:
    return tuple(1 if k == i else 0 for k in range(n))


def is_positive(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(x != 0 for x in v)


def is_omnipresent(v: Sequence[int]) -> bool:
    return all(x > 0 for x in v)


def support(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(v) if x != 0)


@dataclass(frozen=True)
class UnitForm:
    """A unit form on Z^n given by its symmetric off-diagonal coefficients.

    ``coeffs[i][j]`` is q_ij for i != j; the diagonal is stored as 0 and
    never read.  ``labels`` names the indices (vertex ids for Tits forms).
    """

    coeffs: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = len(self.coeffs)
        if n == 0:
            raise ValueError("a unit form needs at least one variable")
        for i, row in enumerate(self.coeffs):
            if len(row) != n:
                raise ValueError("coefficient matrix must be square")
            if row[i] != 0:
                raise ValueError("diagonal entries are implicit; store 0")
            for j in range(i):
                if row[j] != self.coeffs[j][i]:
                    raise ValueError(f"q_{i}{j} != q_{j}{i}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(n)))
        elif len(self.labels) != n:
            raise ValueError("one label per variable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]],
                   labels: Sequence[str] = ()) -> "UnitForm":
        """Build from 0-based ``(i, j, q_ij)`` triples; repeated pairs add up."""
        m = [[0] * n for _ in range(n)]
        for i, j, c in edges:
            if i == j:
                raise ValueError("edges must join distinct indices")
            m[i][j] += c
            m[j][i] += c
        return cls(tuple(tuple(r) for r in m), tuple(labels))

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]], labels: Sequence[str] = ()) -> "UnitForm":
        """Inverse of :meth:`gram`; the diagonal must be all 2."""
        n = len(gram)
        if any(gram[i][i] != 2 for i in range(n)):
            raise ValueError("a unit form has Gram diagonal 2")
        return cls(tuple(tuple(0 if i == j else int(gram[i][j]) for j in range(n))
                         for i in range(n)), tuple(labels))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def q(self, i: int, j: int) -> int:
        return 0 if i == j else self.coeffs[i][j]

    def gram(self) -> list[list[int]]:
        """Symmetric matrix M with q(x) = x M x^t / 2 (diagonal 2)."""
        return [[2 if i == j else self.coeffs[i][j] for j in range(self.n)]
                for i in range(self.n)]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown index label {label!r}") from None

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.n:
            raise DimensionError(f"expected a vector of length {self.n}, got {len(v)}")

    def __call__(self, v: Sequence[int]) -> int:
        return evaluate(self, v)

    def __repr__(self) -> str:
        edges = [(self.labels[i], self.labels[j], self.coeffs[i][j])
                 for i in range(self.n) for j in range(i + 1, self.n) if self.coeffs[i][j]]
        return f"UnitForm(n={self.n}, edges={edges})"


def evaluate(q: UnitForm, v: Sequence[int]) -> int:
    q._check(v)
    total = 0
    c = q.coeffs
    for i, x in enumerate(v):
        if x:
            total += x * x
            row = c[i]
            for j in range(i + 1, q.n):
                if row[j] and v[j]:
                    total += row[j] * x * v[j]
    return total


def bilinear(q: UnitForm, v: Sequence[int], w: Sequence[int]) -> int:
    q._check(v)
    q._check(w)
    total = 0
    for i, x in enumerate(v):
        if x:
            row = q.coeffs[i]
            s = 2 * w[i]
            for j, y in enumerate(w):
                if y and row[j]:
                    s += row[j] * y
            total += x * s
    return total


def pairings(q: UnitForm, v: Sequence[int]) -> IntVector:
    """All q(v, e_i) at once, i.e. the vector M v."""
    q._check(v)
    out = []
    for i in range(q.n):
        row = q.coeffs[i]
        s = 2 * v[i]
        for j, y in enumerate(v):
            if y and row[j]:
                s += row[j] * y
        out.append(s)
    return tuple(out)


def reflect(q: UnitForm, v: Sequence[int], i: int) -> IntVector:
    """sigma_i(v) = v - q(v, e_i) e_i."""
    q._check(v)
    if not 0 <= i < q.n:
        raise IndexError(f"index {i} out of range for n={q.n}")
    c = pairings(q, v)[i]
    out = list(v)
    out[i] -= c
    return tuple(out)


def is_root(q: UnitForm, v: Sequence[int]) -> bool:
    """Roots here are non-negative, nonzero and have q(v) = 1."""
    return is_positive(v) and evaluate(q, v) == 1


@dataclass(frozen=True)
class RootStatus:
    is_root: bool
    is_positive: bool
    is_omnipresent: bool
    support: tuple[int, ...]
    value: int


def root_status(q: UnitForm, v: Sequence[int]) -> RootStatus:
    value = evaluate(q, v)
    pos = is_positive(v)
    return RootStatus(
        is_root=pos and value == 1,
        is_positive=pos,
        is_omnipresent=is_omnipresent(v),
        support=support(v),
        value=value,
    )


def is_slender(q: UnitForm) -> bool:
    return all(q.coeffs[i][j] >= -1 for i in range(q.n) for j in range(i + 1, q.n))


def restrict_form(q: UnitForm, subset: Iterable[int]) -> UnitForm:
    """Restriction q|J, indices of J kept in increasing order."""
    idx = sorted(set(subset))
    if not idx:
        raise ValueError("cannot restrict to an empty index set")
    for i in idx:
        if not 0 <= i < q.n:
            raise IndexError(f"index {i} out of range for n={q.n}")
    return UnitForm(tuple(tuple(q.coeffs[i][j] for j in idx) for i in idx),
                    tuple(q.labels[i] for i in idx))


def embed(v: Sequence[int], subset: Sequence[int], n: int) -> IntVector:
    """Extend a vector on sorted(subset) by zeros to Z^n."""
    out = [0] * n
    for x, i in zip(v, sorted(subset)):
        out[i] = x
    return tuple(out)


def add(v: Sequence[int], w: Sequence[int], k: int = 1) -> IntVector:
    return tuple(a + k * b for a, b in zip(v, w))
