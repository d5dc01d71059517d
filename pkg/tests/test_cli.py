import json

import pytest

from complrover.cli import WorkspaceConfig, main, run
from complrover.errors import ComplroverError
from conftest import FIXTURES

OSCAR = FIXTURES / "oscar"
TINY = FIXTURES / "tiny"


def invoke(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("query, label", [
    ("oscar_winners", "CERTAIN_AND_COMPLETE"),
    ("oscar_winners_with_tattoos", "CERTAIN_LOWER_BOUND"),
    ("tattooed_without_oscar", "CERTAIN_LOWER_BOUND"),
    ("oscar_winners_without_tattoos", "POSSIBLE_UPPER_BOUND"),
])
def test_classify_scenarios(capsys, query, label):
    code, out, _ = invoke(capsys, "classify", "--graph", OSCAR / "graph.nt", "--query", OSCAR / f"{query}.rq",
                          "--statements", OSCAR / "complete_oscar.compl")
    assert code == 0
    doc = json.loads(out)
    assert doc["classification"]["label"] == label
    assert "sufficient conditions only" in doc["classification"]["note"]


def test_eval_output_shape(capsys):
    code, out, _ = invoke(capsys, "eval", "--graph", OSCAR / "graph.nt", "--query", OSCAR / "oscar_winners_without_tattoos.rq")
    assert code == 0
    doc = json.loads(out)
    assert doc["solutions"] == [{"x": {"kind": "iri", "value": "urn:ex:alice"}}]
    assert doc["classification"] is None and doc["diagnostics"] == []


def test_eval_empty_graph(capsys):
    code, out, _ = invoke(capsys, "eval", "--graph", TINY / "empty.nt", "--query", TINY / "oscar_winners.rq")
    assert code == 0
    assert json.loads(out)["solutions"] == []


def test_text_format(capsys):
    code, out, _ = invoke(capsys, "classify", "--graph", OSCAR / "graph.nt", "--query", OSCAR / "oscar_winners.rq",
                          "--statements", OSCAR / "complete_oscar.compl", "--format", "text")
    assert code == 0
    assert "classification: CERTAIN_AND_COMPLETE" in out
    assert "?x = <urn:ex:alice>" in out


def test_entails(capsys):
    code, out, _ = invoke(capsys, "entails", "--query", OSCAR / "gg_among_oscar.compl",
                          "--statements", OSCAR / "complete_oscar_gg.compl")
    doc = json.loads(out)
    assert code == 0 and doc["entailed"] is True
    assert doc["frozen_map"] == {"x": "urn:frozen:x"}
    assert "<urn:frozen:x> <urn:ex:won> <urn:ex:gg> ." in doc["frozen_graph"]

    code, out, _ = invoke(capsys, "entails", "--query", OSCAR / "complete_oscar.compl",
                          "--statements", OSCAR / "gg_among_oscar.compl")
    doc = json.loads(out)
    assert doc["entailed"] is False
    assert doc["missing"] == ["<urn:frozen:x> <urn:ex:won> <urn:ex:oscar> ."]


def test_oracle_agrees_with_classifier(capsys):
    code, out, _ = invoke(capsys, "oracle", "--graph", TINY / "graph.nt", "--query", TINY / "oscar_winners.rq",
                          "--statements", TINY / "complete_oscar.compl")
    doc = json.loads(out)
    assert code == 0
    summary = doc["oracle_summary"]
    assert all(c["holds"] for c in summary["checks"])
    assert summary["certain"] == summary["possible"] == doc["solutions"]
    assert summary["universe"]["fresh_constants"] == 1


def test_oracle_cap_exceeded(capsys):
    code, out, err = invoke(capsys, "oracle", "--graph", TINY / "graph.nt", "--query", TINY / "oscar_winners_without_tattoos.rq",
                            "--statements", TINY / "complete_oscar.compl")
    assert code == 1 and out == ""
    assert "candidate pool has 29 triples" in err


def test_candidate_cap_limit(capsys):
    code, _, err = invoke(capsys, "oracle", "--graph", TINY / "graph.nt", "--query", TINY / "oscar_winners.rq",
                          "--candidate-cap", "25")
    assert code == 1 and "candidate-cap" in err


def test_input_errors_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.nt"
    bad.write_text("<urn:a> <urn:p> <urn:o> .\n_:b <urn:p> <urn:o> .\n")
    code, _, err = invoke(capsys, "eval", "--graph", bad, "--query", TINY / "oscar_winners.rq")
    assert code == 1 and f"{bad}:2:" in err

    unsafe = tmp_path / "q.rq"
    unsafe.write_text("SELECT ?t WHERE { ?x <urn:ex:won> <urn:ex:oscar> }")
    code, _, err = invoke(capsys, "eval", "--graph", TINY / "graph.nt", "--query", unsafe)
    assert code == 1 and "?t" in err

    code, _, err = invoke(capsys, "eval", "--graph", tmp_path / "missing.nt", "--query", unsafe)
    assert code == 1 and "cannot read" in err


def test_inconsistent_query_warns(capsys, tmp_path):
    q = tmp_path / "q.rq"
    q.write_text("SELECT ?x WHERE { ?x <urn:ex:won> <urn:ex:oscar> FILTER NOT EXISTS { ?x <urn:ex:won> ?any } }")
    code, out, err = invoke(capsys, "eval", "--graph", TINY / "graph.nt", "--query", q)
    assert code == 0
    assert "possibly inconsistent" in err
    assert json.loads(out)["diagnostics"]


def test_oracle_discrepancy_exits_2(monkeypatch, capsys):
    from complrover import cli
    from complrover.classifier import Classification

    monkeypatch.setattr(cli, "classify", lambda q, cs: Classification(True, True))
    code, _, err = invoke(capsys, "oracle", "--graph", TINY / "graph.nt", "--query", TINY / "oscar_winners.rq")
    assert code == 2 and "oracle contradicts" in err


def test_run_validates_config():
    with pytest.raises(ComplroverError):
        WorkspaceConfig(graph_path=None, query_path=TINY / "oscar_winners.rq", candidate_cap=30)
    with pytest.raises(ComplroverError):
        run(WorkspaceConfig(graph_path=None, query_path=TINY / "oscar_winners.rq"), "eval")
