import json

from adlv.cli import main
from adlv.serialize import SCHEMA_VERSION


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_pi0_command(capsys):
    code, doc, _ = run(capsys, "pi0", "--datum", "pgl2", "--lambda", "[2]", "--b", "t[0];e")
    assert code == 0
    assert doc["size"] == 2 and doc["schema_version"] == SCHEMA_VERSION
    assert doc["command"] == "pi0"


def test_output_is_byte_identical(capsys):
    argv = ["choose-levi", "--datum", "pgl3-flip", "--lambda", "[1,1]", "--b", "t[0,0];e"]
    _, _, a = run(capsys, *argv)
    _, _, b = run(capsys, *argv)
    assert a == b


def test_empty_variety_exit_code(capsys):
    code, doc, _ = run(capsys, "nonempty", "--datum", "pgl2", "--lambda", "[1]", "--b", "t[0];e")
    assert code == 2 and doc["nonempty"] is False and doc["criterion"] == "kappa mismatch"
    code, doc, _ = run(capsys, "pi0", "--datum", "pgl2", "--lambda", "[1]", "--b", "t[0];e")
    assert code == 2 and doc["error"]["kind"] == "domain"


def test_schema_errors(capsys):
    code, doc, _ = run(capsys, "pi0", "--bogus")
    assert code == 3 and doc["error"]["kind"] == "schema"
    code, doc, _ = run(capsys, "pi0", "--datum", "Q7", "--lambda", "[1]", "--b", "t[0];e")
    assert code == 3
    code, doc, _ = run(capsys, "pi0", "--datum", "pgl2", "--b", "t[0];e")
    assert code == 3 and doc["error"]["payload"]["field"] == "lambda"


def test_non_dominant_lambda(capsys):
    code, doc, _ = run(capsys, "straight", "--datum", "pgl2", "--lambda", "[-1]")
    assert code == 2


def test_verify_command(capsys):
    code, doc, _ = run(capsys, "verify", "--lemma", "key", "--type", "pgl2", "--bound", "2", "--height", "4")
    assert code == 0 and doc["report"]["status"] == "PASS"
    code, doc, _ = run(capsys, "verify", "--lemma", "nope")
    assert code == 2


def test_reduce_and_invariants(capsys):
    code, doc, _ = run(capsys, "reduce", "--datum", "pgl3", "--x", "t[1,1];s1 s2")
    assert code == 0 and doc["minimal_length"] <= doc["length"]
    code, doc, _ = run(capsys, "invariants", "--datum", "pgl3-flip", "--b", "t[1,0];e")
    assert code == 0 and doc["nu"] == ["1/2", "1/2"]


def test_query_document(capsys, tmp_path):
    q = tmp_path / "q.json"
    q.write_text(json.dumps({"command": "pi0", "datum": "pgl2", "lambda": [2], "b": "t[0];e"}))
    code, doc, _ = run(capsys, "--query", str(q))
    assert code == 0 and doc["size"] == 2
    q.write_text(json.dumps({"command": "pi0", "colour": 1}))
    code, doc, _ = run(capsys, "--query", str(q))
    assert code == 3


def test_out_files(capsys, tmp_path):
    p = tmp_path / "chain.jsonl"
    code, doc, _ = run(capsys, "chain", "--datum", "pgl3-flip", "--lambda", "[2,2]", "--mu", "[2,-1]",
                       "--mu2", "[-1,2]", "--out", str(p))
    assert code == 0
    lines = p.read_text().splitlines()
    assert len(lines) == len(doc["steps"])
    assert all(json.loads(line) == s for line, s in zip(lines, doc["steps"]))
    p = tmp_path / "res.json"
    run(capsys, "pi0", "--datum", "pgl2", "--lambda", "[2]", "--b", "t[0];e", "--out", str(p))
    assert json.loads(p.read_text())["size"] == 2
