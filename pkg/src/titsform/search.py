"""Bounded breadth-first growth of non-negative vectors by unit steps.

Two searches share the same engine:

* ``roots`` mode grows from the unit vectors and keeps vectors with
  q = 1.  A minimal (coordinate-wise) positive vector with q <= 0 always
  has a root as a unit-step predecessor, and the roots below it are
  connected to a unit vector by root chains, so every box-bounded
  vector with q <= 0 is detected: a pruned exhaustive search for
  non-weak-positivity.
* ``small`` mode grows from 0 and keeps vectors with q in {0, 1}.  As long
  as nothing negative lies below, every such vector has a unit-step
  predecessor of the same kind, and a minimal negative vector has one
  too, so this is a pruned exhaustive search for q < 0.  When the form is
  weakly non-negative the kept set is exactly the box-bounded roots and
  isotropic vectors.

Levels are processed by coordinate sum; within the first level that
produces a witness the lexicographically least one is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .unitform import IntVector, UnitForm


class SearchLimitExceeded(RuntimeError):
    pass


@dataclass
class GrowResult:
    states: dict[IntVector, int]
    witness: IntVector | None
    witness_value: int | None


def grow(q: UnitForm, mode: str, bound: int | Sequence[int],
         max_states: int | None = None,
         stop_at_witness: bool = True) -> GrowResult:
    n = q.n
    caps = (bound,) * n if isinstance(bound, int) else tuple(bound)
    if len(caps) != n:
        raise ValueError("bound vector has wrong length")
    gram = q.gram()
    cols = [tuple(gram[i][j] for i in range(n)) for j in range(n)]

    if mode == "roots":
        floor, keep = 1, (1,)
        level = {}
        for j in range(n):
            if caps[j] >= 1:
                e = tuple(1 if k == j else 0 for k in range(n))
                level[e] = (cols[j], 1)
    elif mode == "small":
        floor, keep = 0, (0, 1)
        level = {(0,) * n: ((0,) * n, 0)}
    else:
        raise ValueError(f"unknown mode {mode!r}")

    states: dict[IntVector, int] = {v: val for v, (_, val) in level.items()}
    witnesses: list[tuple[IntVector, int]] = []
    while level:
        nxt: dict[IntVector, tuple[IntVector, int]] = {}
        for v, (p, val) in level.items():
            for j in range(n):
                if v[j] >= caps[j]:
                    continue
                nval = val + p[j] + 1
                if nval in keep:
                    w = v[:j] + (v[j] + 1,) + v[j + 1:]
                    if w not in states and w not in nxt:
                        col = cols[j]
                        nxt[w] = (tuple(a + b for a, b in zip(p, col)), nval)
                elif nval < floor:
                    w = v[:j] + (v[j] + 1,) + v[j + 1:]
                    witnesses.append((w, nval))
        if witnesses and stop_at_witness:
            w, val = min(witnesses)
            return GrowResult(states, w, val)
        for w, (_, val) in nxt.items():
            states[w] = val
        if max_states is not None and len(states) > max_states:
            raise SearchLimitExceeded(
                f"{mode} search exceeded {max_states} states (bound {bound})")
        level = nxt
    if witnesses:
        w, val = min(witnesses)
        return GrowResult(states, w, val)
    return GrowResult(states, None, None)
