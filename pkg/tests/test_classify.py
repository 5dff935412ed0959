import pytest
from hypothesis import HealthCheck, assume, given, settings

from helpers import min_value, slender_forms
from titsform.classify import (ClassificationError, SubsetScan, Verdict, critical_restrictions,
                               criticality_certificate, hypercritical_restrictions,
                               hypercritical_witnesses, is_nonnegative_with_radical,
                               is_weakly_nonnegative, is_weakly_positive,
                               weakly_nonnegative_oracle, weakly_positive_oracle)
from titsform.corpus import FIXTURES, fixture
from titsform.unitform import UnitForm, bilinear, embed, evaluate, restrict_form, unit_vector

WP, WNN, NEG = Verdict.WEAKLY_POSITIVE, Verdict.WEAKLY_NONNEGATIVE_NOT_WP, Verdict.NOT_WEAKLY_NONNEGATIVE

# verdicts and lex-least witnesses frozen from the growth search, each
# confirmed by the subset oracles below
FROZEN = {
    "ex_1_4": (WNN, (0, 0, 0, 1, 1, 2, 2, 2, 1, 1, 0, 0, 0)),
    "ex_1_5_1": (WNN, (0, 1, 2, 3, 4, 5, 6, 4, 2, 3)),
    "ex_1_5_2a": (WNN, (0, 0, 0, 0, 0, 1, 2, 1, 1, 1)),
    "ex_1_5_2b": (WNN, (0, 2, 1, 1, 1, 1)),
    "ex_1_5_3": (NEG, (1, 1, 2, 2, 1, 1, 0)),
    "ex_1_5_4": (WP, None),
    "ex_1_5_5": (NEG, (0, 0, 0, 0, 1, 1, 2, 3, 2, 1, 1)),
    "q_M": (NEG, (1, 1, 1, 1)),
    "B11": (WNN, (1, 1, 2, 1, 1, 1, 1)),
    "B10": (WNN, (1, 1, 2, 1, 1, 1, 1)),
    "B01": (WNN, (1, 1, 2, 1, 1, 1, 1)),
    "A1_n13": (WNN, (2, 2, 2, 2, 1, 1, 0, 0, 0, 2, 2, 1, 1)),
    "A2": (WNN, (0, 0, 1, 2, 3, 4, 2, 3, 1, 2)),
    "kronecker2": (WNN, (1, 1)),
    "kronecker3": (NEG, (1, 1)),
    "A3": (WP, None),
    "A2tilde": (WNN, (1, 1, 1)),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_fixture_verdicts(name):
    q = fixture(name).load().form
    rep = is_weakly_nonnegative(q)
    verdict, witness = FROZEN[name]
    assert rep.verdict is verdict and rep.witness == witness
    if witness is not None:
        assert evaluate(q, witness) == rep.witness_value
        assert rep.witness_value == (0 if verdict is WNN else min(-1, rep.witness_value))
    if q.n <= 11:  # subset oracles are exponential; the 13-vertex fixtures take minutes
        assert weakly_positive_oracle(q) == (verdict is WP)
        assert weakly_nonnegative_oracle(q) == (verdict is not NEG)


def test_all_fixtures_have_frozen_verdicts():
    assert set(FROZEN) | {"ex_1_4_form"} == set(FIXTURES)


@given(slender_forms(max_n=6))
def test_weak_positivity_matches_oracle_and_box(q):
    rep = is_weakly_positive(q)
    assert (rep.verdict is WP) == weakly_positive_oracle(q)
    assert (rep.verdict is WP) == (min_value(q, 3) > 0)
    if rep.verdict is not WP:
        assert evaluate(q, rep.witness) <= 0 and min(rep.witness) >= 0 and any(rep.witness)


@given(slender_forms(max_n=6))
def test_weak_nonnegativity_matches_oracle(q):
    rep = is_weakly_nonnegative(q)
    assert rep.weakly_nonnegative == weakly_nonnegative_oracle(q)
    if rep.verdict is NEG:
        assert evaluate(q, rep.witness) < 0


@given(slender_forms(max_n=5, values=(-3, -2, -1, 0, 1)))
def test_non_slender_forms(q):
    rep = is_weakly_nonnegative(q)
    assert rep.weakly_nonnegative == weakly_nonnegative_oracle(q)
    if rep.verdict is WP:
        assert all(q.q(i, j) >= -1 for i in range(q.n) for j in range(q.n))
    if rep.weakly_nonnegative:
        assert all(q.q(i, j) >= -2 for i in range(q.n) for j in range(q.n))


@given(slender_forms(max_n=6))
def test_critical_witnesses(q):
    for c in critical_restrictions(q):
        sub = restrict_form(q, c.subset)
        assert not weakly_positive_oracle(sub)
        assert all(weakly_positive_oracle(restrict_form(q, [x for x in c.subset if x != i]))
                   for i in c.subset) or len(c.subset) == 1
        z = c.critical_vector
        if z is None:
            continue
        assert min(z) > 0 and 1 in z and evaluate(sub, z) == 0
        assert all(bilinear(sub, z, unit_vector(sub.n, i)) == 0 for i in range(sub.n))


def test_critical_vector_of_triangle():
    q = fixture("A2tilde").load().form
    cert = criticality_certificate(q)
    assert cert.critical_vector == (1, 1, 1)
    ok, radical = is_nonnegative_with_radical(q)
    assert ok and radical == [(1, 1, 1)]


def test_kronecker_critical_vector_absent_below_minus_two():
    q = fixture("kronecker3").load().form
    assert criticality_certificate(q).critical_vector is None


def test_q_M_witnesses():
    q = fixture("q_M").load().form
    hw = hypercritical_witnesses(q)
    assert hw.is_qM and hw.v == (1, 1, 1, 1) and hw.w == (2, 2, 1, 1)


def test_triangle_with_pendant_vertex():
    q = UnitForm.from_edges(4, [(0, 1, -1), (1, 2, -1), (0, 2, -1), (2, 3, -1)])
    hw = hypercritical_witnesses(q)
    z = (1, 1, 1, 0)
    e = unit_vector(4, 3)
    assert not hw.is_qM
    assert (hw.v, hw.w) == (tuple(2 * a + b for a, b in zip(z, e)),
                            tuple(4 * a + b for a, b in zip(z, e)))
    assert evaluate(q, hw.v) == -1 and evaluate(q, hw.w) == -3


@settings(max_examples=60, suppress_health_check=[HealthCheck.filter_too_much])
@given(slender_forms(min_n=3, max_n=6, values=(-1, -1, -1, 0, 1)))
def test_hypercritical_witness_values(q):
    hyper = hypercritical_restrictions(q)
    assume(hyper)
    for subset in hyper[:3]:
        sub = restrict_form(q, subset)
        hw = hypercritical_witnesses(sub)
        assert evaluate(sub, hw.v) == (-2 if hw.is_qM else -1)
        assert evaluate(sub, hw.w) == -3
        assert min(hw.v) >= 0 and min(hw.w) >= 0


def test_hypercritical_witnesses_preconditions():
    with pytest.raises(ClassificationError):
        hypercritical_witnesses(fixture("A3").load().form)
    with pytest.raises(ClassificationError):
        hypercritical_witnesses(fixture("kronecker3").load().form)


def test_inconclusive_above_ceiling():
    q = UnitForm.from_edges(25, [(i, i + 1, -1) for i in range(24)])
    assert is_weakly_nonnegative(q).verdict is Verdict.INCONCLUSIVE


def test_report_json():
    rep = is_weakly_nonnegative(fixture("A2tilde").load().form, with_restrictions=True)
    doc = rep.to_json()
    assert doc["verdict"] == "WEAKLY_NONNEGATIVE_NOT_WP"
    assert doc["critical"] == [{"J": [0, 1, 2], "z": [1, 1, 1]}]
    assert doc["hypercritical"] == []
