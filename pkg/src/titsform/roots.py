"""Roots of unit forms: enumeration, (local) maximality, exceptional
indices and reflection chains.

Maximality is decided exactly.  Let v be a locally maximal root of a weakly
non-negative form and w = v + d > v.  Then q(w) = 1 + q(d) + q(v, d) with
both summands >= 0, so w is a root iff q(d) = 0 and d lives on
Z = {j : q(v, e_j) = 0}.  Hence v is maximal iff q|Z is weakly positive.

For slender forms that are not weakly non-negative no root is maximal: a
hypercritical restriction provides explicit larger roots (see
:func:`larger_root`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .classify import (MAX_STATES, ClassificationReport, SubsetScan, Verdict,
                       hypercritical_witnesses, is_weakly_nonnegative,
                       is_weakly_positive)
from .search import grow
from .unitform import (IntVector, UnitForm, add, bilinear, embed, evaluate,
                       is_omnipresent, is_positive, is_slender, pairings,
                       reflect, restrict_form, support, unit_vector)

OMNIPRESENT_BOUND = 12


class RootError(ValueError):
    """A precondition of a root operation does not hold."""


class Inconclusive(RuntimeError):
    pass


@lru_cache(maxsize=4096)
def _classification(q: UnitForm) -> ClassificationReport:
    return is_weakly_nonnegative(q)


def weakly_nonnegative(q: UnitForm) -> bool:
    rep = _classification(q)
    if rep.weakly_nonnegative is None:
        raise Inconclusive(f"weak non-negativity undecided: {rep.strategy}")
    return rep.weakly_nonnegative


def _require_root(q: UnitForm, v: Sequence[int]) -> IntVector:
    v = tuple(v)
    if len(v) != q.n:
        raise RootError(f"vector has length {len(v)}, form has {q.n} variables")
    if not is_positive(v) or evaluate(q, v) != 1:
        raise RootError(f"{list(v)} is not a positive root (q = {evaluate(q, v)})")
    return v


# ---------------------------------------------------------------- enumeration

def enumerate_positive_roots(q: UnitForm, max_states: int | None = MAX_STATES) -> list[IntVector]:
    """All positive roots of a weakly positive form, lexicographically sorted.

    Closure from the unit vectors: a root v with q(v, e_i) = -1 yields the
    root v + e_i, and every root is reached by such a chain.
    """
    rep = is_weakly_positive(q)
    if rep.verdict is Verdict.INCONCLUSIVE:
        raise Inconclusive(rep.strategy)
    if rep.verdict is not Verdict.WEAKLY_POSITIVE:
        raise RootError(f"form is not weakly positive (witness {list(rep.witness)})")
    n = q.n
    gram = q.gram()
    level = {unit_vector(n, i): tuple(gram[i]) for i in range(n)}
    seen = set(level)
    while level:
        nxt = {}
        for v, p in level.items():
            for i in range(n):
                if p[i] == -1:
                    w = v[:i] + (v[i] + 1,) + v[i + 1:]
                    if w not in seen and w not in nxt:
                        nxt[w] = tuple(a + b for a, b in zip(p, gram[i]))
        seen.update(nxt)
        if max_states is not None and len(seen) > max_states:
            raise Inconclusive(f"more than {max_states} roots")
        level = nxt
    return sorted(seen)


def enumerate_omnipresent_roots(q: UnitForm, bound: int = OMNIPRESENT_BOUND,
                                max_states: int | None = MAX_STATES
                                ) -> tuple[list[IntVector], bool]:
    """Omnipresent roots with coordinates <= bound, and a completeness flag.

    ``complete`` is true iff a maximal omnipresent root was found; only then
    is the list known to be every omnipresent root of the form.
    """
    if not weakly_nonnegative(q):
        raise RootError("form is not weakly non-negative")
    res = grow(q, "small", bound, max_states=max_states)
    if res.witness is not None:
        raise RootError(f"negative vector {list(res.witness)} in the box")
    found = sorted(v for v, val in res.states.items() if val == 1 and is_omnipresent(v))
    complete = any(larger_root(q, v) is None for v in found if is_locally_maximal(q, v))
    return found, complete


def maximal_roots(q: UnitForm, roots: Sequence[IntVector]) -> list[IntVector]:
    return [v for v in roots if is_maximal(q, v)]


# ---------------------------------------------------------------- maximality

def is_locally_maximal(q: UnitForm, v: Sequence[int]) -> bool:
    v = _require_root(q, v)
    return min(pairings(q, v)) >= 0


def larger_root(q: UnitForm, v: Sequence[int]) -> IntVector | None:
    """A root w > v, or None when v is maximal.

    Defined for weakly non-negative forms and for slender forms; any other
    form raises :class:`RootError`.  Every returned vector is re-evaluated.
    """
    v = _require_root(q, v)
    p = pairings(q, v)
    for i, c in enumerate(p):
        if c < 0:
            # q(v + k e_i) = 1 + k^2 + k c vanishes back to 1 at k = -c
            return _verified(q, v, add(v, unit_vector(q.n, i), -c))
    if weakly_nonnegative(q):
        zero = [j for j in range(q.n) if p[j] == 0]
        if not zero:
            return None
        rep = is_weakly_positive(restrict_form(q, zero))
        if rep.verdict is Verdict.INCONCLUSIVE:
            raise Inconclusive(rep.strategy)
        if rep.verdict is Verdict.WEAKLY_POSITIVE:
            return None
        return _verified(q, v, add(v, embed(rep.witness, zero, q.n)))
    if not is_slender(q):
        raise RootError("maximality is only decided for weakly non-negative or slender forms")
    return _above_via_hypercritical(q, v, p)


def is_maximal(q: UnitForm, v: Sequence[int]) -> bool:
    return larger_root(q, v) is None


def _verified(q: UnitForm, v: IntVector, w: IntVector) -> IntVector:
    if evaluate(q, w) != 1 or w == v or any(a < b for a, b in zip(w, v)):
        raise AssertionError(f"internal: {list(w)} is not a root above {list(v)}")
    return w


def _above_via_hypercritical(q: UnitForm, v: IntVector, p: IntVector) -> IntVector:
    # v is locally maximal here, so c = q(v, w1) >= 0 for any w1 >= 0.
    scan = SubsetScan(q)
    mask = next(m for m in scan._masks_by_size() if scan.is_hypercritical(m))
    J = scan.indices(mask)
    hw = hypercritical_witnesses(restrict_form(q, J))
    w1, w2 = embed(hw.v, J, q.n), embed(hw.w, J, q.n)
    c = bilinear(q, v, w1)
    if c == 0:
        # pairings vanish on J = supp w2, so q(2v + w2) = 4 - 3 = 1
        return _verified(q, v, add(add(v, v), w2))
    if not hw.is_qM:
        # q(v + c w1) = 1 - c^2 + c^2
        return _verified(q, v, add(v, w1, c))
    if c % 2 == 0:
        # q(w1) = -2: q(v + k w1) = 1 - 2k^2 + kc
        return _verified(q, v, add(v, w1, c // 2))
    sub = restrict_form(q, J)
    pj = [p[i] for i in J]
    for box in range(1, c + 3):
        for d in product(range(box + 1), repeat=len(J)):
            if max(d) == box and evaluate(sub, d) + sum(a * b for a, b in zip(d, pj)) == 0:
                return _verified(q, v, add(v, embed(d, J, q.n)))
    raise Inconclusive(f"no root above {list(v)} found through the q_M restriction")


# ---------------------------------------------------------------- exceptional indices

class Case(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class Exceptional:
    case: Case
    indices: tuple[int, ...]
    pairings: tuple[int, ...]

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        idx = list(self.indices) if labels is None else [labels[i] for i in self.indices]
        return {"case": self.case.value, "indices": idx, "pairings": list(self.pairings)}


@dataclass(frozen=True)
class RootAnalysis:
    root: IntVector
    locally_maximal: bool
    maximal: bool
    exceptional: Exceptional

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        return {"root": list(self.root), "locally_maximal": self.locally_maximal,
                "maximal": self.maximal, "exceptional": self.exceptional.to_json(labels)}


def exceptional_analysis(q: UnitForm, v: Sequence[int]) -> RootAnalysis:
    """Case I / II / III of a locally maximal omnipresent root.

    Since sum v(i) q(v, e_i) = 2q(v) = 2 with all pairings >= 0, the
    positive pairings form one of three patterns:
    I: one index, pairing 1, v = 2;  II: two indices, pairing 1, v = 1 at
    both;  III: one index, pairing 2, v = 1.  A maximal root other than a
    unit vector is never in case III and q restricted to the complement of E is weakly positive.
    """
    v = _require_root(q, v)
    if not is_omnipresent(v):
        raise RootError("exceptional analysis needs an omnipresent root")
    p = pairings(q, v)
    if min(p) < 0:
        raise RootError("root is not locally maximal")
    if sum(a * b for a, b in zip(v, p)) != 2:
        raise AssertionError("internal: pairing identity sum v(i) q(v, e_i) = 2 fails")
    E = tuple(i for i in range(q.n) if p[i] > 0)
    vals = tuple(p[i] for i in E)
    if len(E) == 1 and vals == (1,) and v[E[0]] == 2:
        case = Case.I
    elif len(E) == 2 and vals == (1, 1) and v[E[0]] == v[E[1]] == 1:
        case = Case.II
    elif len(E) == 1 and vals == (2,) and v[E[0]] == 1:
        case = Case.III
    else:
        raise AssertionError(f"internal: pairings {p} fit none of the three cases")
    maximal = is_maximal(q, v)
    if maximal:
        # a single vertex is the one maximal root in case III: v - e_j = 0
        if case is Case.III and sum(v) > 1:
            raise AssertionError("internal: maximal root in case III")
        rest = [i for i in range(q.n) if i not in E]
        if rest and is_weakly_positive(restrict_form(q, rest)).verdict is not Verdict.WEAKLY_POSITIVE:
            raise AssertionError("internal: complement of E is not weakly positive")
    return RootAnalysis(v, True, maximal, Exceptional(case, E, vals))


# ---------------------------------------------------------------- reflection chains

@dataclass(frozen=True)
class ReflectionChain:
    start: int
    sequence: tuple[int, ...]
    root: IntVector

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        name = (lambda i: i) if labels is None else (lambda i: labels[i])
        return {"start": name(self.start), "sequence": [name(i) for i in self.sequence],
                "root": list(self.root)}


class ChainError(AssertionError):
    pass


def reflection_chain(q: UnitForm, v: Sequence[int], require_wnn: bool = True) -> ReflectionChain:
    """A vertex j, reflections i_1..i_s and a root y with
    (1) sigma_{i_s}..sigma_{i_1}(e_j) = y <= v, (2) every prefix adds one
    unit vector, (3) q(u) >= 1 for 0 < u <= y, (4) q(v - y) = 0.

    Isotropic vectors u <= v are stripped first: v - u is a root (then
    recurse on it), or it is isotropic and a unique i with q(u, e_i) = 1
    and v(i) = 1 lets us recurse on v - u - e_i.  Once the box below the
    current root is anisotropic, the chain is grown from the least index of
    its support by the least admissible unit step.

    With ``require_wnn=False`` forms that are not weakly non-negative are
    attempted as well; the result is still fully verified.
    """
    v = _require_root(q, v)
    if require_wnn and not weakly_nonnegative(q):
        raise RootError("reflection chains need a weakly non-negative form")
    try:
        chain = _grow_chain(q, _anisotropic_root(q, v))
        check_chain(q, v, chain)
        return chain
    except ChainError:
        pass
    # The stripping can end on a root y with q(v - y) != 0.  Fall back to
    # the exhaustive choice among y = v - d, d isotropic.
    cands = chain_candidates(q, v)
    if not cands:
        raise NoChain(v)
    chain = _grow_chain(q, cands[0])
    check_chain(q, v, chain)
    return chain


class NoChain(ChainError):
    """No root y <= v has an anisotropic interval and q(v - y) = 0."""

    def __init__(self, v):
        super().__init__(f"no root y <= {list(v)} with anisotropic interval and q(v - y) = 0")
        self.root = tuple(v)


def _anisotropic(q: UnitForm, y: IntVector) -> bool:
    res = grow(q, "small", y, max_states=MAX_STATES)
    return res.witness is None and not any(val == 0 and any(u) for u, val in res.states.items())


def chain_candidates(q: UnitForm, v: Sequence[int]) -> list[IntVector]:
    """Every root y <= v with anisotropic interval and q(v - y) = 0, ordered
    by |v - y| then lexicographically in v - y.  Requires that nothing
    negative lies below v (then the box search sees every isotropic d)."""
    v = _require_root(q, v)
    res = grow(q, "small", v, max_states=MAX_STATES)
    if res.witness is not None:
        raise ChainError(f"negative vector {list(res.witness)} below {list(v)}")
    ds = sorted((d for d, val in res.states.items() if val == 0), key=lambda d: (sum(d), d))
    out = []
    for d in ds:
        y = add(v, d, -1)
        if any(y) and evaluate(q, y) == 1 and _anisotropic(q, y):
            out.append(y)
    return out


def _anisotropic_root(q: UnitForm, v: IntVector) -> IntVector:
    while True:
        res = grow(q, "small", v, max_states=MAX_STATES)
        if res.witness is not None:
            raise ChainError(f"negative vector {list(res.witness)} below {list(v)}")
        iso = [u for u, val in res.states.items() if val == 0 and any(u)]
        if not iso:
            return v
        u = min(iso, key=lambda x: (sum(x), x))
        w = add(v, u, -1)
        if evaluate(q, w) == 1:
            v = w
            continue
        pu = pairings(q, u)
        cand = [i for i in support(v) if pu[i] > 0]
        if evaluate(q, w) != 0 or len(cand) != 1 or v[cand[0]] != 1 or pu[cand[0]] != 1:
            raise ChainError(f"isotropic split of {list(v)} by {list(u)} is irregular")
        v = add(w, unit_vector(q.n, cand[0]), -1)
        if evaluate(q, v) != 1:
            raise ChainError("internal: stripped vector is not a root")


def _grow_chain(q: UnitForm, y: IntVector) -> ReflectionChain:
    n = q.n
    j = support(y)[0]
    r = unit_vector(n, j)
    p = list(pairings(q, r))
    gram = q.gram()
    seq = []
    while r != y:
        i = next((i for i in range(n) if r[i] < y[i] and p[i] == -1), None)
        if i is None:
            raise ChainError(f"no reflection step from {list(r)} towards {list(y)}")
        seq.append(i)
        r = r[:i] + (r[i] + 1,) + r[i + 1:]
        p = [a + b for a, b in zip(p, gram[i])]
    return ReflectionChain(j, tuple(seq), y)


def check_chain(q: UnitForm, v: Sequence[int], chain: ReflectionChain) -> None:
    """Machine check of properties (1)-(4); raises :class:`ChainError`."""
    n = q.n
    y = chain.root
    r = unit_vector(n, chain.start)
    expected = list(r)
    for i in chain.sequence:
        r = reflect(q, r, i)
        expected[i] += 1
        if r != tuple(expected):
            raise ChainError(f"reflection at {i} does not add e_{i}")
    if r != y:
        raise ChainError("reflections do not reproduce the root")
    if any(a > b for a, b in zip(y, v)):
        raise ChainError("root is not below v")
    if not _anisotropic(q, y):
        raise ChainError("interval below the root is not anisotropic")
    if evaluate(q, add(tuple(v), y, -1)) != 0:
        raise ChainError("q(v - y) != 0")
