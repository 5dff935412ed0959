"""Brute-force reference computations and hypothesis strategies."""

from __future__ import annotations

import itertools

import numpy as np
from hypothesis import strategies as st

from titsform.unitform import UnitForm


@st.composite
def slender_forms(draw, min_n=1, max_n=6, values=(-1, 0, 1, 2)):
    n = draw(st.integers(min_n, max_n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            c = draw(st.sampled_from(values))
            if c:
                edges.append((i, j, c))
    return UnitForm.from_edges(n, edges)


def box(n: int, bound: int) -> np.ndarray:
    return np.array(list(itertools.product(range(bound + 1), repeat=n)), dtype=np.int64)


def values(q: UnitForm, grid: np.ndarray) -> np.ndarray:
    g = np.array(q.gram(), dtype=np.int64)
    return np.einsum("ki,ij,kj->k", grid, g, grid) // 2


def min_value(q: UnitForm, bound: int) -> int:
    """Least q value over nonzero vectors in [0, bound]^n."""
    grid = box(q.n, bound)[1:]
    return int(values(q, grid).min())


def roots_in_box(q: UnitForm, bound: int) -> list[tuple[int, ...]]:
    grid = box(q.n, bound)
    return sorted(tuple(int(x) for x in r) for r in grid[values(q, grid) == 1])
