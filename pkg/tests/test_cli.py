import json

import pytest

from titsform import roots as R
from titsform.cli import analysis_report, main
from titsform.corpus import fixture
from titsform.presentation import parse_document
from titsform.unitform import UnitForm, evaluate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def path(name):
    return fixture(name).path()


def test_analyze_json_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", path("ex_1_5_1"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc == analysis_report(fixture("ex_1_5_1").load(), path("ex_1_5_1"))
    assert doc["classification"]["verdict"] == "WEAKLY_NONNEGATIVE_NOT_WP"
    assert doc["max_coordinate"] == 12
    # re-verify every numeric claim from the emitted matrix alone
    q = UnitForm.from_gram(doc["tits_matrix"])
    assert evaluate(q, doc["classification"]["witness"]) == doc["classification"]["witness_value"]
    for v in doc["omnipresent_roots"]:
        assert evaluate(q, v) == 1
    (entry,) = doc["maximal_omnipresent"]
    assert R.is_maximal(q, entry["root"]) and entry["maximal"]
    assert entry["analysis"]["exceptional"] == {"case": "II", "indices": ["a", "b"],
                                                "pairings": [1, 1]}


def test_analyze_negative_verdict(capsys):
    code, out, _ = run(capsys, "analyze", path("ex_1_5_5"))
    assert code == 1 and "NOT_WEAKLY_NONNEGATIVE" in out


def test_threads_do_not_change_output(capsys):
    outs = {run(capsys, "--threads", str(t), "analyze", path("ex_1_5_4"), "--json")[1]
            for t in (1, 2, 4)}
    assert len(outs) == 1


def test_roots_flags_locally_maximal(capsys):
    code, out, _ = run(capsys, "roots", path("ex_1_4_form"), "--omnipresent")
    assert code == 0
    f = fixture("ex_1_4_form")
    q = f.load().form
    fmt = lambda v: "(" + ",".join(map(str, v)) + ")"
    lines = out.splitlines()
    assert fmt(f.vector("v", q.labels)) + " locally-maximal-not-maximal" in lines
    assert any(l.startswith(fmt(f.vector("u", q.labels))) for l in lines)


def test_roots_json_maximal_only(capsys):
    code, out, _ = run(capsys, "roots", path("A3"), "--maximal-only", "--json")
    doc = json.loads(out)
    assert code == 0 and [e["root"] for e in doc["roots"]] == [[1, 1, 1]] and doc["complete"]


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", path("A3"), "--root", "1,1,1", "--json")
    assert code == 0
    assert json.loads(out) == {"start": "1", "sequence": ["2", "3"], "root": [1, 1, 1],
                               "v": [1, 1, 1]}
    code, out, _ = run(capsys, "chain", path("ex_1_5_2a"), "--root", "1,1,1,2,1,1,2,1,1,1")
    assert code == 1 and "no root y" in out


def test_quotient(capsys):
    code, out, _ = run(capsys, "quotient", path("B10"), "--vertex", "m", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["differences"] == [{"pair": ["s", "t"], "quotient": 0, "restriction": 1}]
    # the emitted presentation parses back
    code, text, _ = run(capsys, "quotient", path("B10"), "--vertex", "m")
    assert parse_document(text).presentation.n == 6


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", path("B11"), "--dim", "1,1,1,1,1,1,1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["found"]["p"] == 2 and doc["free_entries"] == 7
    code, out, _ = run(capsys, "realize", path("A2"), "--dim", "1,2,2,2,2,2,1,1,2,2")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["analyze", "/nonexistent.form"],
    ["chain", "A3", "--root", "1,x"],
    ["quotient", "A2tilde", "--vertex", "1"],
    ["quotient", "A3", "--vertex", "zz"],
    ["realize", "A3", "--dim", "1,1"],
    ["roots", "ex_1_5_3", "--omnipresent"],
])
def test_usage_errors(capsys, argv):
    argv = [path(a) if a in ("A3", "A2tilde", "ex_1_5_3") else a for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["realize", path("A3"), "--dim", "1,1,1", "--p", "4"])
    assert info.value.code == 2


def test_fixture_listing(capsys):
    code, out, _ = run(capsys, "fixtures", "--json")
    assert code == 0 and json.loads(out)["fixtures"]["B11"] == "B11.quiver"
