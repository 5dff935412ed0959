import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings

from helpers import box, roots_in_box, slender_forms, values
from titsform import roots as R
from titsform.classify import Verdict, is_weakly_nonnegative, weakly_positive_oracle
from titsform.corpus import fixture
from titsform.unitform import evaluate, is_omnipresent, pairings, restrict_form, unit_vector

# (count, complete) frozen from the bounded enumeration
OMNIPRESENT = {
    "ex_1_4": (5, False), "ex_1_5_1": (1, True), "ex_1_5_2a": (1, True),
    "ex_1_5_2b": (1, True), "ex_1_5_4": (11, True), "A1_n13": (1, True), "A2": (8, True),
    "A3": (1, True), "B11": (312, False), "kronecker2": (22, False), "A2tilde": (66, False),
}


def _vec(name, key="v"):
    f = fixture(name)
    q = f.load().form
    return q, f.vector(key, q.labels)


@pytest.mark.parametrize("name", sorted(OMNIPRESENT))
def test_omnipresent_enumeration(name):
    q = fixture(name).load().form
    found, complete = R.enumerate_omnipresent_roots(q)
    assert (len(found), complete) == OMNIPRESENT[name]
    assert found == sorted(found)
    for v in found:
        assert evaluate(q, v) == 1 and is_omnipresent(v)
        assert all(-2 <= c <= 2 for c in pairings(q, v))


@pytest.mark.parametrize("name", ["ex_1_5_3", "ex_1_5_5", "q_M", "kronecker3"])
def test_omnipresent_enumeration_needs_wnn(name):
    with pytest.raises(R.RootError):
        R.enumerate_omnipresent_roots(fixture(name).load().form)


def test_positive_roots_need_weak_positivity():
    with pytest.raises(R.RootError):
        R.enumerate_positive_roots(fixture("B11").load().form)


def test_positive_roots_of_A3():
    assert R.enumerate_positive_roots(fixture("A3").load().form) == [
        (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1)]


def test_displayed_all_ones_root_is_not_locally_maximal():
    for name in ("B11", "B10", "B01"):
        q, v = _vec(name)
        assert not R.is_locally_maximal(q, v)
        assert R.larger_root(q, v) == (1, 1, 3, 1, 1, 1, 1)


def test_slender_non_wnn_certificate():
    q, v = _vec("ex_1_5_3")
    assert R.larger_root(q, v) == (6, 6, 6, 6, 3, 2, 2)


def test_ex_1_4_larger_root_is_u():
    q, v = _vec("ex_1_4")
    _, u = _vec("ex_1_4", "u")
    assert R.larger_root(q, v) == u


@pytest.mark.parametrize("name, case, labels", [
    ("ex_1_5_1", R.Case.II, ["a", "b"]),
    ("ex_1_5_2a", R.Case.II, ["a", "b"]),
    ("ex_1_5_2b", R.Case.II, ["a", "b"]),
    ("A1_n13", R.Case.II, ["o", "o2"]),
    ("A2", R.Case.I, ["o"]),
    ("ex_1_5_3", R.Case.III, ["j"]),
])
def test_exceptional_cases(name, case, labels):
    q, v = _vec(name)
    an = R.exceptional_analysis(q, v)
    assert an.exceptional.case is case
    assert [q.labels[i] for i in an.exceptional.indices] == labels
    assert an.maximal == (case is not R.Case.III)
    doc = an.to_json(q.labels)
    assert doc["root"] == list(v) and doc["exceptional"]["case"] == case.value


def test_exceptional_analysis_preconditions():
    q, v = _vec("B11")
    with pytest.raises(R.RootError):
        R.exceptional_analysis(q, v)
    q = fixture("A3").load().form
    with pytest.raises(R.RootError):
        R.exceptional_analysis(q, (1, 1, 0))
    with pytest.raises(R.RootError):
        R.exceptional_analysis(q, (1, 0, 1))


def test_A3_chain():
    chain = R.reflection_chain(fixture("A3").load().form, (1, 1, 1))
    assert (chain.start, chain.sequence, chain.root) == (0, (1, 2), (1, 1, 1))


def test_unit_vector_chain():
    q = fixture("A2tilde").load().form
    chain = R.reflection_chain(q, (0, 1, 0))
    assert (chain.start, chain.sequence, chain.root) == (1, (), (0, 1, 0))


def _brute_force_chain_targets(q, v):
    """Every root y <= v with q(v - y) = 0 and q(u) >= 1 on 0 < u <= y."""
    grid = np.array(list(itertools.product(*[range(x + 1) for x in v])), dtype=np.int64)
    vals = values(q, grid)
    rest = values(q, np.array(v) - grid)
    out = []
    for y in grid[(vals == 1) & (rest == 0)]:
        below = (grid <= y).all(axis=1) & grid.any(axis=1)
        if vals[below].min() >= 1:
            out.append(tuple(int(x) for x in y))
    return out


@pytest.mark.parametrize("name", ["ex_1_5_2a", "ex_1_5_2b", "A2tilde"])
def test_chain_candidates_match_brute_force(name):
    q = fixture(name).load().form
    v = fixture(name).vector("v", q.labels) if fixture(name).vectors else (1, 2, 1)
    assert sorted(R.chain_candidates(q, v)) == sorted(_brute_force_chain_targets(q, v))


@pytest.mark.parametrize("name", ["ex_1_5_1", "ex_1_5_2a"])
def test_roots_without_chain(name):
    q, v = _vec(name)
    with pytest.raises(R.NoChain) as info:
        R.reflection_chain(q, v)
    assert info.value.root == v
    assert R.chain_candidates(q, v) == []


def test_chain_outside_hypothesis():
    q, v = _vec("ex_1_5_5")
    with pytest.raises(R.RootError):
        R.reflection_chain(q, v)
    with pytest.raises(R.ChainError):
        R.reflection_chain(q, v, require_wnn=False)


def test_check_chain_rejects_tampering():
    q = fixture("A3").load().form
    chain = R.reflection_chain(q, (1, 1, 1))
    bad = R.ReflectionChain(chain.start, chain.sequence[:1], chain.root)
    with pytest.raises(R.ChainError):
        R.check_chain(q, (1, 1, 1), bad)


@settings(max_examples=80)
@given(slender_forms(max_n=5))
def test_weakly_positive_roots(q):
    assume(weakly_positive_oracle(q))
    rts = R.enumerate_positive_roots(q)
    assert rts == roots_in_box(q, 6)
    rset = set(rts)
    for v in rts:
        p = pairings(q, v)
        if sum(v) > 1:
            assert all(-1 <= p[i] <= 1 for i in range(q.n) if v[i])
        above = any(w != v and all(a >= b for a, b in zip(w, v)) for w in rset)
        assert R.is_locally_maximal(q, v) == R.is_maximal(q, v) == (not above)
        R.check_chain(q, v, R.reflection_chain(q, v))


@settings(max_examples=80)
@given(slender_forms(max_n=5))
def test_maximality_against_box(q):
    wnn = is_weakly_nonnegative(q).weakly_nonnegative
    grid = box(q.n, 3)
    vals = values(q, grid)
    rts = grid[vals == 1]
    for row in rts:
        v = tuple(int(x) for x in row)
        w = R.larger_root(q, v)
        if w is None:
            # nothing above v in the box
            assert not any((r >= row).all() and (r != row).any() for r in rts)
            if wnn and is_omnipresent(v) and q.n > 1:
                an = R.exceptional_analysis(q, v)
                assert an.exceptional.case is not R.Case.III
        else:
            assert evaluate(q, w) == 1 and all(a >= b for a, b in zip(w, v)) and w != v
        if not wnn and is_omnipresent(v):
            assert w is not None


@settings(max_examples=60, suppress_health_check=[HealthCheck.filter_too_much])
@given(slender_forms(min_n=3, max_n=5, values=(-1, -1, 0, 0, 1)))
def test_chains_on_wnn_forms(q):
    assume(is_weakly_nonnegative(q).verdict is Verdict.WEAKLY_NONNEGATIVE_NOT_WP)
    for v in roots_in_box(q, 2):
        try:
            chain = R.reflection_chain(q, v)
        except R.NoChain:
            assert R.chain_candidates(q, v) == []
            continue
        R.check_chain(q, v, chain)
