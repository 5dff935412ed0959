"""Acceptance corpus: the thirteen pass/fail checks run by
``titsform fixtures --run-all`` and by the test suite.

Every check returns a :class:`Outcome` with human readable detail lines.
Tolerances (time limits, sample sizes, boxes) are module constants.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import roots as R
from .classify import (Verdict, hypercritical_witnesses, is_weakly_nonnegative,
                       is_weakly_positive, weakly_positive_oracle)
from .corpus import FIXTURES, fixture
from .presentation import quotient_by_vertex, tits_form
from .realize import distinct_realizations, search_realization
from .unitform import (UnitForm, evaluate, is_omnipresent, is_slender, pairings,
                       restrict_form)

CRIT1_SECONDS = 1e-3
CRIT3_SECONDS = 5.0
CRIT8_FORMS, CRIT8_MAX_N, CRIT8_SECONDS, CRIT8_BOX = 1000, 8, 60.0, 3
CRIT9_FORMS, CRIT9_MAX_N = 1000, 7
CRIT9_WP_FORMS, CRIT9_WP_MAX_N, CRIT9_BOX = 200, 6, 6
CRIT10_BOX = 2
CRIT12_SECONDS = 30 * 60.0
CRIT12_B11_SECONDS = 10.0
CRIT12_CANDIDATES = 2 ** 30
SEED = 20240601


@dataclass
class Outcome:
    passed: bool
    details: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: Callable[[], Outcome]
    slow: bool = False


def _fx(name):
    f = fixture(name)
    doc = f.load()
    return f, doc, doc.form


# ---------------------------------------------------------------- generators and oracles

def random_slender_form(rng: random.Random, n: int) -> UnitForm:
    """Off-diagonal coefficients drawn from {-1, 0, 1, 2}, biased towards -1 and 0."""
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            c = rng.choices((-1, 0, 1, 2), weights=(4, 5, 2, 1))[0]
            if c:
                edges.append((i, j, c))
    return UnitForm.from_edges(n, edges)


def random_weakly_positive_form(rng: random.Random, n: int) -> UnitForm:
    while True:
        q = random_slender_form(rng, n)
        if weakly_positive_oracle(q):
            return q


def box_values(q: UnitForm, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """All vectors in [0, bound]^n with their q values (numpy, no pruning)."""
    n = q.n
    grid = np.array(list(itertools.product(range(bound + 1), repeat=n)), dtype=np.int64)
    g = np.array(q.gram(), dtype=np.int64)
    vals = np.einsum("ki,ij,kj->k", grid, g, grid) // 2
    return grid, vals


def brute_force_roots(q: UnitForm, bound: int) -> list[tuple[int, ...]]:
    grid, vals = box_values(q, bound)
    return sorted(tuple(int(x) for x in row) for row in grid[vals == 1])


# ---------------------------------------------------------------- criteria

def crit1() -> Outcome:
    f, doc, _ = _fx("ex_1_5_5")
    pres = doc.presentation
    v = f.vector("v", pres.vertices)
    best = float("inf")
    for _ in range(20):
        t = time.perf_counter()
        value = evaluate(tits_form(pres), v)
        best = min(best, time.perf_counter() - t)
    ok = value == 1 and best < CRIT1_SECONDS
    return Outcome(ok, [f"q_A(v) = {value}, {best * 1e3:.3f} ms (limit {CRIT1_SECONDS * 1e3:.0f} ms)"])


def crit2() -> Outcome:
    _, _, q = _fx("q_M")
    a, b = evaluate(q, (1, 1, 1, 1)), evaluate(q, (2, 2, 1, 1))
    hw = hypercritical_witnesses(q)
    ok = (a, b) == (-2, -3) and hw.is_qM and hw.v == (1, 1, 1, 1) and hw.w == (2, 2, 1, 1)
    return Outcome(ok, [f"q_M(1,1,1,1) = {a}, q_M(2,2,1,1) = {b}, is_qM = {hw.is_qM}, "
                        f"witnesses {hw.v} {hw.w}"])


def crit3() -> Outcome:
    f, _, q = _fx("ex_1_5_1")
    v = f.vector("v", q.labels)
    R._classification.cache_clear()
    t = time.perf_counter()
    maximal = R.is_maximal(q, v)
    elapsed = time.perf_counter() - t
    an = R.exceptional_analysis(q, v)
    names = [q.labels[i] for i in an.exceptional.indices]
    ok = (maximal and is_omnipresent(v) and max(v) == 12 and an.exceptional.case is R.Case.II
          and names == ["a", "b"] and elapsed < CRIT3_SECONDS)
    return Outcome(ok, [f"maximal = {maximal}, max coordinate {max(v)}, case "
                        f"{an.exceptional.case.value} at {names}, {elapsed:.2f} s"])


def crit4() -> Outcome:
    f, _, q = _fx("ex_1_4")
    v, u = f.vector("v", q.labels), f.vector("u", q.labels)
    lm, mx = R.is_locally_maximal(q, v), R.is_maximal(q, v)
    ok = (lm and not mx and evaluate(q, u) == 1 and all(a >= b for a, b in zip(u, v))
          and u != v)
    return Outcome(ok, [f"v locally maximal = {lm}, maximal = {mx}, q(u) = {evaluate(q, u)}, "
                        f"u >= v = {all(a >= b for a, b in zip(u, v))}"])


def crit5() -> Outcome:
    f, _, q = _fx("ex_1_5_3")
    v = f.vector("v", q.labels)
    an = R.exceptional_analysis(q, v)
    (j,) = an.exceptional.indices if len(an.exceptional.indices) == 1 else (None,)
    ok = an.locally_maximal and an.exceptional.case is R.Case.III and j is not None
    if ok:
        rest = restrict_form(q, [i for i in range(q.n) if i != j])
        wp = is_weakly_positive(rest).verdict
        ok = pairings(q, v)[j] == 2 and v[j] == 1 and wp is Verdict.NOT_WEAKLY_POSITIVE
        return Outcome(ok, [f"case III at {q.labels[j]}, pairing {pairings(q, v)[j]}, "
                            f"v(j) = {v[j]}, q^(j) verdict {wp.value}"])
    return Outcome(False, [f"analysis {an.to_json(q.labels)}"])


def crit6() -> Outcome:
    f, _, q = _fx("ex_1_5_4")
    lines, sets, ok = [], [], True
    for key in ("left", "right"):
        v = f.vector(key, q.labels)
        an = R.exceptional_analysis(q, v)
        names = [q.labels[i] for i in an.exceptional.indices]
        sets.append(set(names))
        ok &= an.maximal and is_omnipresent(v)
        lines.append(f"{key}: maximal = {an.maximal}, case {an.exceptional.case.value} at {names}")
    ok &= sets[0] != sets[1]
    return Outcome(ok, lines)


def crit7() -> Outcome:
    f1, _, q1 = _fx("A1_n13")
    a1 = R.exceptional_analysis(q1, f1.vector("v", q1.labels))
    f2, _, q2 = _fx("A2")
    v2 = f2.vector("v", q2.labels)
    a2 = R.exceptional_analysis(q2, v2)
    e2 = a2.exceptional.indices
    ok = (a1.maximal and len(a1.exceptional.indices) == 2 and a2.maximal and len(e2) == 1
          and a2.exceptional.case is R.Case.I and v2[e2[0]] == 2)
    return Outcome(ok, [
        f"A1: maximal = {a1.maximal}, exceptional {[q1.labels[i] for i in a1.exceptional.indices]}",
        f"A2: maximal = {a2.maximal}, case {a2.exceptional.case.value}, exceptional "
        f"{[q2.labels[i] for i in e2]} with v = {[v2[i] for i in e2]}"])


def _maximal_root_check(q: UnitForm) -> tuple[int, int, int]:
    """Returns (violations, maximal roots seen, roots certified non-maximal)."""
    verdict = is_weakly_nonnegative(q).verdict
    if verdict is Verdict.INCONCLUSIVE:
        return 1, 0, 0
    if verdict is Verdict.NOT_WEAKLY_NONNEGATIVE:
        # no maximal omnipresent root may exist: every omnipresent root in
        # the box must have a certified root above it
        grid, vals = box_values(q, CRIT8_BOX)
        rows = grid[(vals == 1) & (grid.min(axis=1) > 0)]
        bad = sum(R.larger_root(q, tuple(int(x) for x in row)) is None for row in rows)
        return bad, 0, len(rows)
    found, _ = R.enumerate_omnipresent_roots(q)
    maximal = [v for v in found if R.is_maximal(q, v)]
    bad = sum(1 for v in maximal if max(v) > 12)
    return bad, len(maximal), 0


def crit8() -> Outcome:
    t = time.perf_counter()
    tally = [0, 0, 0]
    forms = [f.load().form for f in FIXTURES.values()]
    rng = random.Random(SEED)
    forms += [random_slender_form(rng, rng.randint(1, CRIT8_MAX_N)) for _ in range(CRIT8_FORMS)]
    for q in forms:
        if is_slender(q):
            tally = [a + b for a, b in zip(tally, _maximal_root_check(q))]
    violations, maximal, certified = tally
    elapsed = time.perf_counter() - t
    ok = violations == 0 and elapsed < CRIT8_SECONDS
    return Outcome(ok, [f"{CRIT8_FORMS} random forms plus fixtures: {maximal} maximal omnipresent "
                        f"roots, {certified} omnipresent roots of other forms certified non-maximal, "
                        f"{violations} violations, {elapsed:.1f} s"])


def crit9() -> Outcome:
    rng = random.Random(SEED + 1)
    dis = 0
    for _ in range(CRIT9_FORMS):
        q = random_slender_form(rng, rng.randint(1, CRIT9_MAX_N))
        bounded = is_weakly_positive(q).verdict is Verdict.WEAKLY_POSITIVE
        dis += bounded != weakly_positive_oracle(q)
    root_dis = 0
    for _ in range(CRIT9_WP_FORMS):
        q = random_weakly_positive_form(rng, rng.randint(1, CRIT9_WP_MAX_N))
        root_dis += R.enumerate_positive_roots(q) != brute_force_roots(q, CRIT9_BOX)
    return Outcome(dis == 0 and root_dis == 0, [
        f"weak positivity: {dis} disagreements over {CRIT9_FORMS} forms",
        f"root lists: {root_dis} disagreements over {CRIT9_WP_FORMS} weakly positive forms"])


def crit10() -> Outcome:
    checked = skipped = 0
    failures = []
    for name, f in FIXTURES.items():
        q = f.load().form
        if not R.weakly_nonnegative(q):
            skipped += 1
            continue
        if is_weakly_positive(q).verdict is Verdict.WEAKLY_POSITIVE:
            rts = R.enumerate_positive_roots(q)
        else:
            rts = brute_force_roots(q, CRIT10_BOX) if q.n <= 10 else []
            rts = sorted(set(rts) | {f.vector(k, q.labels) for k in f.vectors})
        for v in rts:
            checked += 1
            try:
                R.check_chain(q, v, R.reflection_chain(q, v))
            except R.ChainError as exc:
                failures.append(f"{name} {v}: {type(exc).__name__}")
    lines = [f"{checked} roots over weakly non-negative fixtures ({skipped} fixtures outside "
             f"the hypothesis), {len(failures)} violations"]
    return Outcome(not failures, lines + failures)


def crit11() -> Outcome:
    bad, lines = 0, []
    b10_diff = None
    for name, f in FIXTURES.items():
        doc = f.load()
        if doc.presentation is None:
            continue
        pres = doc.presentation
        for k, a in enumerate(pres.vertices):
            qbar = tits_form(quotient_by_vertex(pres, a))
            qp = restrict_form(doc.form, [i for i in range(pres.n) if i != k])
            diff = [(qbar.labels[i], qbar.labels[j]) for i in range(qbar.n)
                    for j in range(i + 1, qbar.n) if qbar.q(i, j) != qp.q(i, j)]
            over = [(i, j) for i in range(qbar.n) for j in range(qbar.n)
                    if qbar.q(i, j) > qp.q(i, j)]
            bad += bool(over)
            if name == "B10" and a == "m":
                b10_diff = diff
    lines.append(f"q-bar <= q' violations: {bad}")
    lines.append(f"B10 / m differs at {b10_diff}")
    return Outcome(bad == 0 and b10_diff == [("s", "t")], lines)


def crit12() -> Outcome:
    lines, ok = [], True
    f, doc, q = _fx("ex_1_5_5")
    t = time.perf_counter()
    res = search_realization(doc.presentation, f.vector("v", q.labels), 2, "exhaustive")
    el = time.perf_counter() - t
    ok &= (res.found is None and res.exhausted and res.candidates <= CRIT12_CANDIDATES
           and el < CRIT12_SECONDS)
    lines.append(f"ex_1_5_5: found = {res.found is not None}, exhausted = {res.exhausted}, "
                 f"{res.candidates} candidates, {el:.0f} s")
    f, doc, q = _fx("B11")
    t = time.perf_counter()
    res = search_realization(doc.presentation, f.vector("v", q.labels), 2, "exhaustive")
    el = time.perf_counter() - t
    ok &= res.found is not None and el < CRIT12_B11_SECONDS
    lines.append(f"B11: found = {res.found is not None}, {el:.2f} s")
    f, doc, q = _fx("B01")
    reps = distinct_realizations(doc.presentation, f.vector("y", q.labels), 2, want=4)
    ok &= len(reps) >= 2
    lines.append(f"B01: {len(reps)} pairwise non-isomorphic indecomposables of dimension y")
    return Outcome(ok, lines)


def crit13() -> Outcome:
    lines, ok = [], True
    for name, f in FIXTURES.items():
        q = f.load().form
        if is_weakly_nonnegative(q).verdict is not Verdict.WEAKLY_POSITIVE:
            continue
        rts = R.enumerate_positive_roots(q)
        rset = set(rts)
        mismatch = 0
        for v in rts:
            # brute-force maximality: no listed root strictly above v
            above = any(w != v and all(a >= b for a, b in zip(w, v)) for w in rset)
            mismatch += R.is_locally_maximal(q, v) != (not above)
            mismatch += R.is_maximal(q, v) != (not above)
        ok &= mismatch == 0 and max(max(v) for v in rts) <= 6
        lines.append(f"{name}: {len(rts)} roots, max coordinate {max(max(v) for v in rts)}, "
                     f"{mismatch} mismatches")
    return Outcome(ok and bool(lines), lines)


CRITERIA: list[Criterion] = [
    Criterion(1, "Tits form value of the non-realizable root", crit1),
    Criterion(2, "q_M values and witnesses", crit2),
    Criterion(3, "maximal omnipresent root with coordinate 12", crit3),
    Criterion(4, "locally maximal root below another root", crit4),
    Criterion(5, "case III root with non weakly positive q^(j)", crit5),
    Criterion(6, "two maximal roots with different exceptional sets", crit6),
    Criterion(7, "exceptional index counts for A1 and A2", crit7),
    Criterion(8, "maximal omnipresent roots only for weakly non-negative forms", crit8),
    Criterion(9, "bounded search agrees with oracles", crit9),
    Criterion(10, "reflection chain postconditions on fixture roots", crit10),
    Criterion(11, "quotient form bounded by restriction", crit11),
    Criterion(12, "realization probe over F_2", crit12, slow=True),
    Criterion(13, "locally maximal iff maximal for weakly positive fixtures", crit13),
]


def run_criterion(c: Criterion) -> Outcome:
    try:
        return c.check()
    except Exception as exc:  # a crash is a failure of the criterion, reported as such
        return Outcome(False, [f"raised {type(exc).__name__}: {exc}"])
