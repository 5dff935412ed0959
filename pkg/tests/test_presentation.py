import pytest
from hypothesis import given, strategies as st

from titsform.corpus import FIXTURES, fixture
from titsform.presentation import (ParseError, PresentationError, euler_bilinear,
                                   format_presentation, parse_document, parse_presentation,
                                   quotient_by_vertex, tits_form)
from titsform.unitform import evaluate, restrict_form

QUIVERS = [n for n, f in FIXTURES.items() if f.filename.endswith(".quiver")]

A3 = """[quiver]
vertex 1
vertex 2
vertex 3
arrow a: 1 -> 2
arrow b: 2 -> 3
"""


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_parse(name):
    doc = fixture(name).load()
    assert doc.form.n >= 1
    for key in fixture(name).vectors:
        fixture(name).vector(key, doc.form.labels)


@pytest.mark.parametrize("name", QUIVERS)
def test_format_round_trip(name):
    pres = fixture(name).load().presentation
    again = parse_presentation(format_presentation(pres))
    assert again.to_json() == pres.to_json()


@pytest.mark.parametrize("name", QUIVERS)
def test_euler_form_symmetrizes_to_tits_form(name):
    pres = fixture(name).load().presentation
    q = tits_form(pres)
    for v in [(1,) * pres.n, tuple(range(pres.n)), tuple((i * 7) % 3 for i in range(pres.n))]:
        assert euler_bilinear(pres, v, v) == evaluate(q, v)


def test_path_tits_form():
    q = tits_form(parse_presentation(A3))
    assert q.gram() == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


def test_relation_raises_coefficient():
    pres = parse_presentation(A3 + "[relations]\nrel: a.b\n")
    assert tits_form(pres).q(0, 2) == 1


def test_form_file():
    doc = parse_document("[form]\nn = 2\nedge 1 2 -2\nlabel 1 x\n")
    assert doc.kind == "form" and doc.form.labels == ("x", "2") and doc.form.q(0, 1) == -2


def test_ex_1_4_form_file_matches_quiver():
    assert fixture("ex_1_4").load().form == fixture("ex_1_4_form").load().form


@pytest.mark.parametrize("text, line", [
    ("vertex 1\n", 1),
    ("[quiver]\nvertex 1\nvertex 1\n", 3),
    ("[quiver]\nvertex 1\nvertex 2\narrow a: 1 -> 3\n", 4),
    ("[quiver]\nvertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n", 5),
    ("[quiver]\nvertex 1\n\n  nonsense\n", 4),
    (A3 + "[relations]\nrel: a\n", 8),
    (A3 + "[relations]\nrel: b.a\n", 8),
    (A3 + "[relations]\nrel: a.b a.b\n", 8),
    (A3 + "[relations]\nrel: a.b\nrel: 2*a.b\n", 9),
    ("[form]\nn = 2\nedge 1 1 -1\n", 3),
    ("[form]\nn = 2\nedge 1 2 -1\nedge 2 1 -1\n", 4),
    ("[form]\nn = 2\n[quiver]\nvertex 1\n", 1),
    ("[bogus]\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert info.value.line == line


def test_parse_presentation_rejects_form():
    with pytest.raises(PresentationError):
        parse_presentation("[form]\nn = 1\n")


@pytest.mark.parametrize("name", QUIVERS)
def test_quotient_form_bounded_by_restriction(name):
    doc = fixture(name).load()
    pres = doc.presentation
    for k, a in enumerate(pres.vertices):
        qbar = tits_form(quotient_by_vertex(pres, a))
        qp = restrict_form(doc.form, [i for i in range(pres.n) if i != k])
        assert all(qbar.q(i, j) <= qp.q(i, j) for i in range(qbar.n) for j in range(qbar.n))


def test_quotient_drops_relation_through_vertex():
    pres = fixture("B10").load().presentation
    quot = quotient_by_vertex(pres, "m")
    assert quot.relations == ()
    qbar = tits_form(quot)
    s, t = qbar.index("s"), qbar.index("t")
    assert qbar.q(s, t) == 0


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=10))
def test_random_acyclic_quivers_round_trip(pairs):
    arrows = [(i, j) for i, j in pairs if i < j]
    text = "[quiver]\n" + "".join(f"vertex v{i}\n" for i in range(5))
    text += "".join(f"arrow a{k}: v{i} -> v{j}\n" for k, (i, j) in enumerate(arrows))
    pres = parse_presentation(text)
    assert parse_presentation(format_presentation(pres)).to_json() == pres.to_json()
    q = tits_form(pres)
    assert sum(-q.q(i, j) for i in range(5) for j in range(i + 1, 5)) == len(arrows)
