"""Representations of bound quivers over F_p.

A representation assigns to each arrow s -> t a matrix of shape
d(t) x d(s).  A path ``a.b`` (a first) acts as M(b) M(a).

Positive results (an indecomposable of dimension d exists over F_p) and
negative exhaustive results are statements about the prime field only.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from . import gfp, kernels
from .presentation import Presentation, Relation

ENUMERATION_LIMIT = 2 ** 20
EXHAUSTIVE_ENTRY_LIMIT = 30


class RepresentationError(ValueError):
    pass


class Undecided(RuntimeError):
    """The finite enumeration needed for an exact answer is over budget."""


@dataclass(eq=False)
class FiniteRep:
    presentation: Presentation
    p: int
    dim: tuple[int, ...]
    matrices: dict[str, np.ndarray]

    def __post_init__(self):
        gfp.check_prime(self.p)
        self.dim = tuple(int(x) for x in self.dim)
        if len(self.dim) != self.presentation.n or min(self.dim, default=0) < 0:
            raise RepresentationError("dimension vector does not fit the quiver")
        self.matrices = {k: np.asarray(v, dtype=np.int64).reshape(np.shape(v)) % self.p
                         for k, v in self.matrices.items()}

    def d(self, vertex: str) -> int:
        return self.dim[self.presentation.quiver.index(vertex)]

    def shape_of(self, label: str) -> tuple[int, int]:
        a = self.presentation.quiver.arrow(label)
        return self.d(a.target), self.d(a.source)

    def check_shapes(self) -> None:
        labels = {a.label for a in self.presentation.quiver.arrows}
        if set(self.matrices) != labels:
            raise RepresentationError("one matrix per arrow is required")
        for l, m in self.matrices.items():
            want = self.shape_of(l)
            if m.shape != want and not (m.size == 0 and 0 in want):
                raise RepresentationError(f"matrix {l} has shape {m.shape}, expected {want}")
            if m.shape != want:
                self.matrices[l] = np.zeros(want, dtype=np.int64)

    def path_matrix(self, path: Sequence[str]) -> np.ndarray:
        out = None
        for l in path:
            m = self.matrices[l]
            out = m if out is None else m @ out % self.p
        return out

    @property
    def total(self) -> int:
        return sum(self.dim)

    def to_json(self) -> dict:
        return {"p": self.p, "dim": list(self.dim),
                "matrices": {a.label: self.matrices[a.label].tolist()
                             for a in self.presentation.quiver.arrows}}


def relation_matrix(r: FiniteRep, rel: Relation) -> np.ndarray:
    t, s = r.d(rel.target), r.d(rel.source)
    out = np.zeros((t, s), dtype=np.int64)
    for c, path in rel.terms:
        out = (out + gfp.to_field(c, r.p) * r.path_matrix(path)) % r.p
    return out


def check_rep(r: FiniteRep) -> bool:
    r.check_shapes()
    for rel in r.presentation.relations:
        gfp.to_field(1, r.p)
        for c, _ in rel.terms:
            gfp.to_field(c, r.p)
    return all(not np.any(relation_matrix(r, rel)) for rel in r.presentation.relations)


def zero_rep(pres: Presentation, dim: Sequence[int], p: int) -> FiniteRep:
    vs = pres.quiver
    mats = {a.label: np.zeros((dim[vs.index(a.target)], dim[vs.index(a.source)]), dtype=np.int64)
            for a in vs.arrows}
    return FiniteRep(pres, p, tuple(dim), mats)


# ---------------------------------------------------------------- Hom spaces

@dataclass(eq=False)
class HomSpace:
    source: FiniteRep
    target: FiniteRep
    basis: list[dict[str, np.ndarray]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element(self, coeffs: Sequence[int]) -> dict[str, np.ndarray]:
        p = self.source.p
        out = {}
        for v in self.source.presentation.vertices:
            acc = np.zeros((self.target.d(v), self.source.d(v)), dtype=np.int64)
            for c, b in zip(coeffs, self.basis):
                if c:
                    acc = (acc + c * b[v]) % p
            out[v] = acc
        return out

    def elements(self) -> Iterator[dict[str, np.ndarray]]:
        p = self.source.p
        if p ** self.dimension > ENUMERATION_LIMIT:
            raise Undecided(f"|Hom| = {p}^{self.dimension} exceeds {ENUMERATION_LIMIT}")
        for coeffs in product(range(p), repeat=self.dimension):
            yield self.element(coeffs)


def _same_setting(x: FiniteRep, y: FiniteRep) -> None:
    if x.presentation is not y.presentation and x.presentation != y.presentation:
        raise RepresentationError("representations of different presentations")
    if x.p != y.p:
        raise RepresentationError("representations over different fields")


def is_intertwiner(x: FiniteRep, y: FiniteRep, phi: dict[str, np.ndarray]) -> bool:
    p = x.p
    for a in x.presentation.quiver.arrows:
        lhs = phi[a.target] @ x.matrices[a.label] % p
        rhs = y.matrices[a.label] @ phi[a.source] % p
        if np.any((lhs - rhs) % p):
            return False
    return True


def hom_space(x: FiniteRep, y: FiniteRep) -> HomSpace:
    """Solve phi_t X(a) = Y(a) phi_s for all arrows a: s -> t."""
    _same_setting(x, y)
    x.check_shapes()
    y.check_shapes()
    p = x.p
    verts = x.presentation.vertices
    offset, pos = {}, 0
    for v in verts:
        offset[v] = pos
        pos += y.d(v) * x.d(v)
    nvars = pos
    blocks = []
    for a in x.presentation.quiver.arrows:
        s, t = a.source, a.target
        X, Y = x.matrices[a.label], y.matrices[a.label]
        xs, yt = x.d(s), y.d(t)
        if yt * xs == 0:
            continue
        # row-major vec: vec(phi_t X) = (I kron X^t) vec(phi_t),
        # vec(Y phi_s) = (Y kron I) vec(phi_s)
        row = np.zeros((yt * xs, nvars), dtype=np.int64)
        row[:, offset[t]:offset[t] + yt * x.d(t)] += np.kron(np.eye(yt, dtype=np.int64), X.T)
        row[:, offset[s]:offset[s] + y.d(s) * xs] -= np.kron(Y, np.eye(xs, dtype=np.int64))
        blocks.append(row % p)
    if nvars == 0:
        return HomSpace(x, y, [])
    a = np.vstack(blocks) if blocks else np.zeros((0, nvars), dtype=np.int64)
    null = gfp.nullspace(a, p)
    basis = []
    for vec in null:
        basis.append({v: vec[offset[v]:offset[v] + y.d(v) * x.d(v)].reshape(y.d(v), x.d(v))
                      for v in verts})
    return HomSpace(x, y, basis)


# ---------------------------------------------------------------- indecomposability

@dataclass(frozen=True)
class FittingSplit:
    """X = ker(phi^N) + im(phi^N) with both summands nonzero."""

    endomorphism: dict = field(compare=False)
    kernel_dim: tuple[int, ...]
    image_dim: tuple[int, ...]

    def to_json(self) -> dict:
        return {"endomorphism": {k: v.tolist() for k, v in self.endomorphism.items()},
                "kernel_dim": list(self.kernel_dim), "image_dim": list(self.image_dim)}


def _fitting(x: FiniteRep, phi: dict[str, np.ndarray]) -> FittingSplit | None:
    """None if phi is nilpotent or invertible, otherwise the split."""
    p, N = x.p, x.total
    ranks = []
    for v in x.presentation.vertices:
        d = x.d(v)
        ranks.append(gfp.rank(gfp.matpow(phi[v], N, p), p) if d else 0)
    if sum(ranks) == 0 or tuple(ranks) == x.dim:
        return None
    return FittingSplit(phi, tuple(d - r for d, r in zip(x.dim, ranks)), tuple(ranks))


def _packed(x: FiniteRep):
    q = x.presentation.quiver
    src = [q.index(a.source) for a in q.arrows]
    tgt = [q.index(a.target) for a in q.arrows]
    return kernels.pack(x.dim, src, tgt, [x.matrices[a.label] for a in q.arrows])


def _split_from_packed(dims, src, tgt, mats, p, random_tries, seed):
    """(status, endomorphism vector, offsets) via the compiled kernels."""
    basis, off = kernels.end_basis(dims, src, tgt, mats, p)
    status, coeffs = kernels.find_split(basis, dims, off, p, ENUMERATION_LIMIT)
    if status == 1:
        return 1, coeffs @ basis % p, off
    if status == 2:
        rng = np.random.default_rng(seed)
        for _ in range(random_tries):
            vec = rng.integers(0, p, basis.shape[0]) @ basis % p
            if kernels._splits(kernels.fitting_ranks(vec, dims, off, p), dims):
                return 1, vec, off
    return status, None, off


def decomposition_certificate(x: FiniteRep, random_tries: int = 2000, seed: int = 0,
                              engine: str = "compiled") -> FittingSplit | None:
    """A Fitting split of X, or None when End(X) is local (X indecomposable).

    ``engine="numpy"`` runs the slower reference implementation built on
    :func:`hom_space`; both decide the same question exactly.
    """
    if x.total == 0:
        raise RepresentationError("the zero representation is not indecomposable")
    if engine == "compiled":
        x.check_shapes()
        dims, src, tgt, mats = _packed(x)
        status, vec, off = _split_from_packed(dims, src, tgt, mats, x.p, random_tries, seed)
        if status == 0:
            return None
        if status == 2:
            raise Undecided("End(X) too large for exhaustive test; no split sampled")
        phi = {v: vec[off[k]:off[k + 1]].reshape(x.dim[k], x.dim[k])
               for k, v in enumerate(x.presentation.vertices)}
        return _fitting(x, phi)
    if engine != "numpy":
        raise ValueError(f"unknown engine {engine!r}")
    if x.total == 0:
        raise RepresentationError("the zero representation is not indecomposable")
    end = hom_space(x, x)
    if end.dimension == 1:
        return None
    # cheap probes first; the exhaustive pass below decides regardless
    rng = random.Random(seed)
    for k in range(end.dimension):
        split = _fitting(x, end.basis[k])
        if split is not None:
            return split
    for _ in range(min(random_tries, 4 * end.dimension)):
        split = _fitting(x, end.element([rng.randrange(x.p) for _ in range(end.dimension)]))
        if split is not None:
            return split
    if x.p ** end.dimension <= ENUMERATION_LIMIT:
        for phi in end.elements():
            split = _fitting(x, phi)
            if split is not None:
                return split
        return None
    for _ in range(random_tries):
        phi = end.element([rng.randrange(x.p) for _ in range(end.dimension)])
        split = _fitting(x, phi)
        if split is not None:
            return split
    raise Undecided(f"End has dimension {end.dimension}; exhaustive test over budget "
                    f"and {random_tries} random endomorphisms gave no split")


def is_indecomposable(x: FiniteRep) -> bool:
    return decomposition_certificate(x) is None


def isomorphic(x: FiniteRep, y: FiniteRep, random_tries: int = 2000, seed: int = 0) -> bool:
    _same_setting(x, y)
    if x.dim != y.dim:
        return False
    hom = hom_space(x, y)
    verts = x.presentation.vertices

    def invertible(phi):
        return all(gfp.is_invertible(phi[v], x.p) for v in verts if x.d(v))

    if x.p ** hom.dimension <= ENUMERATION_LIMIT:
        return any(invertible(phi) for phi in hom.elements())
    rng = random.Random(seed)
    for _ in range(random_tries):
        if invertible(hom.element([rng.randrange(x.p) for _ in range(hom.dimension)])):
            return True
    raise Undecided(f"|Hom| = {x.p}^{hom.dimension} over budget; no isomorphism sampled")


# ---------------------------------------------------------------- search

class Mode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


@dataclass
class SearchResult:
    found: FiniteRep | None
    exhausted: bool
    candidates: int = 0

    def to_json(self) -> dict:
        return {"found": None if self.found is None else self.found.to_json(),
                "exhausted": self.exhausted, "candidates": self.candidates}


def free_entries(pres: Presentation, d: Sequence[int]) -> int:
    q = pres.quiver
    return sum(d[q.index(a.source)] * d[q.index(a.target)] for a in q.arrows)


def _all_matrices(shape: tuple[int, int], p: int) -> np.ndarray:
    k = shape[0] * shape[1]
    if p ** k > ENUMERATION_LIMIT:
        raise Undecided(f"an arrow block has {p}^{k} values")
    grid = np.array(list(product(range(p), repeat=k)), dtype=np.int64)
    return grid.reshape((p ** k,) + shape)


class _Searcher:
    def __init__(self, pres: Presentation, d: Sequence[int], p: int, prune: bool = True):
        self.pres, self.p, self.d = pres, gfp.check_prime(p), tuple(d)
        self.prune = prune
        q = pres.quiver
        if len(self.d) != q.n or min(self.d) < 0 or sum(self.d) == 0:
            raise RepresentationError("dimension vector must be non-negative, nonzero, one per vertex")
        self.arrows = list(q.arrows)
        self.shapes = [(self.d[q.index(a.target)], self.d[q.index(a.source)]) for a in self.arrows]
        pos = self.pos = {a.label: k for k, a in enumerate(self.arrows)}
        self.src = [q.index(a.source) for a in self.arrows]
        self.tgt = [q.index(a.target) for a in self.arrows]
        # relation / vertex checks fire once their last arrow is assigned
        self.rel_at: dict[int, list[Relation]] = {}
        for rel in pres.relations:
            last = max(pos[l] for path in rel.paths() for l in path)
            self.rel_at.setdefault(last, []).append(rel)
        self.vertex_at: dict[int, list[str]] = {}
        self.isolated_split = False
        for v in q.vertices:
            if self.d[q.index(v)] == 0:
                continue
            inc = [k for k, a in enumerate(self.arrows) if v in (a.source, a.target)
                   and self.d[q.index(a.source)] and self.d[q.index(a.target)]]
            if not inc:
                if sum(self.d) > self.d[q.index(v)] or self.d[q.index(v)] > 1:
                    self.isolated_split = True
                continue
            self.vertex_at.setdefault(max(inc), []).append(v)
        self.single_vertex = sum(1 for x in self.d if x) == 1 and max(self.d) == 1

    def _indecomposable(self, mats) -> bool:
        packed = kernels.pack(self.d, self.src, self.tgt, mats)
        status, _, _ = _split_from_packed(*packed, self.p, 2000, 0)
        if status == 2:
            raise Undecided("End of a candidate too large for the exhaustive local test")
        return status == 0

    def _rep(self, mats: list[np.ndarray]) -> FiniteRep:
        return FiniteRep(self.pres, self.p, self.d,
                         {a.label: m for a, m in zip(self.arrows, mats)})

    def _relations_ok(self, k: int, mats) -> bool:
        rels = self.rel_at.get(k)
        if not rels:
            return True
        p = self.p
        for rel in rels:
            acc = None
            for c, path in rel.terms:
                m = None
                for l in path:
                    a = mats[self.pos[l]]
                    m = a if m is None else a @ m % p
                term = gfp.to_field(c, p) * m
                acc = term if acc is None else acc + term
            if np.any(acc % p):
                return False
        return True

    def _simple_summand(self, v: str, mats) -> bool:
        """Some vector at v is killed by every outgoing arrow and lies
        outside the images of the incoming ones: S_v splits off."""
        q = self.pres.quiver
        dv = self.d[q.index(v)]
        outs = [mats[k] for k, a in enumerate(self.arrows) if a.source == v and self.shapes[k][0]]
        ins = [mats[k] for k, a in enumerate(self.arrows) if a.target == v and self.shapes[k][1]]
        kernel = gfp.nullspace(np.vstack(outs), self.p).T if outs else np.eye(dv, dtype=np.int64)
        if kernel.shape[1] == 0:
            return False
        image = np.hstack(ins) if ins else np.zeros((dv, 0), dtype=np.int64)
        return not gfp.column_space_contains(image, kernel, self.p)

    def _node_ok(self, k: int, mats) -> bool:
        if not self._relations_ok(k, mats):
            return False
        if self.prune and not self.single_vertex:
            for v in self.vertex_at.get(k, ()):
                if self._simple_summand(v, mats):
                    return False
        return True

    def exhaustive(self, counter: list[int]) -> Iterator[FiniteRep]:
        if self.isolated_split and self.prune:
            return
        choices = [_all_matrices(s, self.p) for s in self.shapes]
        n = len(self.arrows)
        if n == 0:
            r = self._rep([])
            counter[0] += 1
            if is_indecomposable(r):
                yield r
            return
        mats: list[np.ndarray] = []
        idx = [0] * n
        k = 0
        while k >= 0:
            if idx[k] == len(choices[k]):
                idx[k] = 0
                k -= 1
                if k >= 0:
                    mats.pop()
                continue
            m = choices[k][idx[k]]
            idx[k] += 1
            mats.append(m)
            if not self._node_ok(k, mats):
                mats.pop()
                continue
            if k == n - 1:
                counter[0] += 1
                if self._indecomposable(mats):
                    yield self._rep(list(mats))
                mats.pop()
                continue
            k += 1

    def random(self, budget: int, seed: int, counter: list[int]) -> Iterator[FiniteRep]:
        rng = np.random.default_rng(seed)
        for _ in range(budget):
            mats = []
            ok = True
            for k, s in enumerate(self.shapes):
                mats.append(rng.integers(0, self.p, size=s, dtype=np.int64))
                if not self._node_ok(k, mats):
                    ok = False
                    break
            counter[0] += 1
            if ok and not self.isolated_split and self._indecomposable(mats):
                yield self._rep(mats)


def iter_realizations(pres: Presentation, d: Sequence[int], p: int,
                      mode: Mode | str = Mode.EXHAUSTIVE, budget: int = 100_000,
                      seed: int = 0, counter: list[int] | None = None,
                      prune: bool = True) -> Iterator[FiniteRep]:
    """Indecomposable representations of dimension d, in search order.

    ``prune=False`` disables the simple-summand cut (relations are still
    checked per arrow); it exists to test that the cut loses nothing.
    """
    mode = Mode(mode)
    counter = [0] if counter is None else counter
    s = _Searcher(pres, d, p, prune)
    if mode is Mode.EXHAUSTIVE:
        limit = EXHAUSTIVE_ENTRY_LIMIT if p == 2 else int(EXHAUSTIVE_ENTRY_LIMIT / np.log2(p))
        if free_entries(pres, d) > limit:
            raise Undecided(f"{free_entries(pres, d)} free entries exceed the exhaustive "
                            f"limit {limit} at p={p}")
        return s.exhaustive(counter)
    return s.random(budget, seed, counter)


def search_realization(pres: Presentation, d: Sequence[int], p: int,
                       mode: Mode | str = Mode.EXHAUSTIVE, budget: int = 100_000,
                       seed: int = 0) -> SearchResult:
    """First indecomposable of dimension d in entry-lexicographic order.

    ``exhausted`` is true only when the exhaustive enumeration completed
    without a find, which certifies non-existence over F_p.
    """
    counter = [0]
    it = iter_realizations(pres, d, p, mode, budget, seed, counter)
    found = next(it, None)
    exhausted = found is None and Mode(mode) is Mode.EXHAUSTIVE
    return SearchResult(found, exhausted, counter[0])


def distinct_realizations(pres: Presentation, d: Sequence[int], p: int, want: int,
                          scan_limit: int = 10_000) -> list[FiniteRep]:
    """Up to ``want`` pairwise non-isomorphic indecomposables of dimension d."""
    out: list[FiniteRep] = []
    for k, r in enumerate(iter_realizations(pres, d, p)):
        if k >= scan_limit:
            break
        if all(not isomorphic(r, s) for s in out):
            out.append(r)
            if len(out) >= want:
                break
    return out
