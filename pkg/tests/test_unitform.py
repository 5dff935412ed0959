import pytest
from hypothesis import given, strategies as st

from helpers import slender_forms
from titsform.unitform import (DimensionError, UnitForm, add, bilinear, embed, evaluate,
                               is_root, is_slender, pairings, reflect, restrict_form,
                               root_status, unit_vector)


def vectors(n, hi=4):
    return st.lists(st.integers(0, hi), min_size=n, max_size=n).map(tuple)


@given(st.data())
def test_evaluate_matches_gram(data):
    q = data.draw(slender_forms())
    v = data.draw(vectors(q.n))
    g = q.gram()
    assert 2 * evaluate(q, v) == sum(v[i] * g[i][j] * v[j] for i in range(q.n) for j in range(q.n))


@given(st.data())
def test_bilinear_polarizes(data):
    q = data.draw(slender_forms())
    v, w = data.draw(vectors(q.n)), data.draw(vectors(q.n))
    assert bilinear(q, v, w) == bilinear(q, w, v)
    assert bilinear(q, v, w) == evaluate(q, add(v, w)) - evaluate(q, v) - evaluate(q, w)
    assert bilinear(q, v, v) == 2 * evaluate(q, v)


@given(st.data())
def test_pairing_identity(data):
    q = data.draw(slender_forms())
    v = data.draw(vectors(q.n))
    assert sum(a * b for a, b in zip(v, pairings(q, v))) == 2 * evaluate(q, v)


@given(st.data())
def test_reflection_is_an_isometric_involution(data):
    q = data.draw(slender_forms())
    v = data.draw(vectors(q.n))
    i = data.draw(st.integers(0, q.n - 1))
    r = reflect(q, v, i)
    assert evaluate(q, r) == evaluate(q, v)
    assert reflect(q, r, i) == v


def test_from_gram_round_trip():
    q = UnitForm.from_edges(3, [(0, 1, -1), (1, 2, 2)], ["a", "b", "c"])
    assert UnitForm.from_gram(q.gram(), q.labels) == q
    assert q.index("c") == 2


def test_from_edges_adds_repeated_pairs():
    q = UnitForm.from_edges(2, [(0, 1, -1), (1, 0, -1)])
    assert q.q(0, 1) == -2 and not is_slender(q)


def test_restrict_and_embed():
    q = UnitForm.from_edges(4, [(0, 1, -1), (1, 2, -1), (2, 3, -1)], "abcd")
    r = restrict_form(q, [1, 2, 3])
    assert r.labels == ("b", "c", "d") and r.q(0, 1) == -1
    assert embed((1, 2, 3), [1, 2, 3], 4) == (0, 1, 2, 3)


def test_root_predicates():
    q = UnitForm.from_edges(3, [(0, 1, -1), (1, 2, -1)])
    assert is_root(q, (1, 1, 1)) and not is_root(q, (1, 0, 1))
    assert root_status(q, (1, 1, 1)).value == 1
    assert unit_vector(3, 1) == (0, 1, 0)


def test_rejects_malformed():
    with pytest.raises(ValueError):
        UnitForm(((0, 1), (2, 0)))
    with pytest.raises(ValueError):
        UnitForm.from_gram([[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        UnitForm(())
    with pytest.raises(DimensionError):
        evaluate(UnitForm.from_edges(2, []), (1, 2, 3))
