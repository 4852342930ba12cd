from __future__ import annotations

import dataclasses
import json

import pytest

import killingtype.cli as cli
import killingtype.search as search
from killingtype.catalog import build
from killingtype.io import algebra_to_doc, tensor_from_literal, tensor_to_literal, write_json
from killingtype.killing import check_killing_type
from killingtype.symalg import SymTensor, lefschetz_L, trace_free_decompose


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None


def save(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def fake_failure(degree):
    """A check_killing_type stand-in that reports a violation in one degree."""

    def fake(alg, p):
        rep = check_killing_type(alg, p)
        if p != degree:
            return rep
        wit = SymTensor.monomial((p,) + (0,) * (alg.n - 1))
        return dataclasses.replace(rep, verdict=False, witness=wit)

    return fake


# ---------------------------------------------------------------- validate

def test_validate_valid(tmp_path, capsys):
    path = save(tmp_path, "h3.json", algebra_to_doc(build("heisenberg-h3")))
    code, doc = run_json(capsys, "validate", path)
    assert code == 0
    assert doc["valid"] and doc["dimension"] == 3 and doc["predicates"]["is_two_step_nilpotent"]


def test_validate_jacobi_failure(tmp_path, capsys):
    bad = {"dimension": 3, "brackets": [
        {"i": 1, "j": 2, "result": {"2": "1"}},
        {"i": 1, "j": 3, "result": {"3": "1"}},
        {"i": 2, "j": 3, "result": {"1": "1"}},
    ]}
    code, doc = run_json(capsys, "validate", save(tmp_path, "bad.json", bad))
    assert code == 1
    assert not doc["valid"] and any("Jacobi" in p for p in doc["problems"])


def test_validate_indefinite_gram(tmp_path, capsys):
    path = save(tmp_path, "g.json", {"dimension": 2, "gram": [["1", "0"], ["0", "-1"]]})
    code, out, _ = run(capsys, "validate", path)
    assert code == 1 and "invalid" in out


def test_validate_io_and_parse_errors(tmp_path, capsys):
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 3 and "cannot read" in err
    code, _, _ = run(capsys, "validate", save(tmp_path, "junk.json", "{not json"))
    assert code == 1


def test_usage_errors_exit_invalid(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["spaces", "milnor", "--degree", "-1"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


# ------------------------------------------------------------------ spaces

@pytest.mark.parametrize("target,p,killing,conformal", [
    ("milnor(1,2,3)", 2, 2, 2),
    ("abelian(3)", 3, 10, 10),
    ("free-2step-3gen", 1, 3, 3),
    ("free-2step-3gen", 3, None, None),
])
def test_spaces(capsys, target, p, killing, conformal):
    code, doc = run_json(capsys, "spaces", target, "--degree", str(p))
    assert code == 0
    assert doc["killing"]["dim"] == len(doc["killing"]["basis"])
    if killing is not None:
        assert (doc["killing"]["dim"], doc["conformal"]["dim"]) == (killing, conformal)
    else:
        assert doc["conformal"]["dim"] > doc["killing"]["dim"]


def test_spaces_text_and_output(tmp_path, capsys):
    code, out, _ = run(capsys, "spaces", "heisenberg-h3", "--degree", "1")
    assert code == 0 and "Killing: dim 1" in out and "e3" in out
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "spaces", "heisenberg-h3", "--format", "json", "--output", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text())["p"] == 2


def test_unknown_target(capsys):
    code, _, err = run(capsys, "spaces", "sl3")
    assert code == 1 and "unknown catalog entry" in err


# -------------------------------------------------------------- check-type

def test_check_type_true(capsys):
    code, doc = run_json(capsys, "check-type", "heisenberg-h3", "--max-degree", "4")
    assert code == 0 and doc["all_true"]
    assert [r["p"] for r in doc["reports"]] == [0, 1, 2, 3, 4]
    assert all(r["cross_check"] for r in doc["reports"])
    assert "seconds" not in doc


def test_check_type_timing_flag(capsys):
    code, doc = run_json(capsys, "check-type", "solvable2", "--max-degree", "2", "--timing")
    assert code == 0 and len(doc["seconds"]) == 3


def test_check_type_violation(capsys, monkeypatch):
    monkeypatch.setattr(cli, "check_killing_type", fake_failure(3))
    code, out, _ = run(capsys, "check-type", "heisenberg-h3", "--max-degree", "3")
    assert code == 2
    assert "witness: e1^3" in out and "NOT of Killing type" in out


def test_check_type_from_file(tmp_path, capsys):
    path = save(tmp_path, "m.json", algebra_to_doc(build("milnor(1,-2,3)")))
    code, doc = run_json(capsys, "check-type", path, "--max-degree", "3")
    assert code == 0 and doc["dimension"] == 3


# ---------------------------------------------------------------- complete

def test_complete_worked_example(tmp_path, capsys):
    alg = build("free-2step-3gen")
    e = [SymTensor.variable(6, i) for i in range(6)]
    K = (e[0] * e[5] - e[1] * e[4] + e[2] * e[3]) * (e[3] + e[4] + e[5])
    K0, _ = trace_free_decompose(K, alg.gram)
    path = save(tmp_path, "k0.json", tensor_to_literal(K0))
    code, doc = run_json(capsys, "complete", "free-2step-3gen", path)
    assert code == 0
    assert doc["conformal"] and not doc["killing"] and doc["of_killing_type"]
    R = tensor_from_literal(doc["completion"], 6)
    assert alg.d(K0 + lefschetz_L(R, alg.gram)).is_zero()


def test_complete_not_conformal(tmp_path, capsys):
    lit = {"degree": 2, "coeffs": {"1,1,0": "1"}}
    code, doc = run_json(capsys, "complete", "milnor(1,2,3)", save(tmp_path, "xy.json", lit))
    assert code == 0
    assert not doc["conformal"] and doc["completion"] is None


def test_complete_reads_embedded_witness(tmp_path, capsys):
    doc = algebra_to_doc(build("heisenberg-h3"))
    doc["witness"] = {"degree": 1, "coeffs": {"0,0,1": "1"}}
    code, out = run_json(capsys, "complete", save(tmp_path, "w.json", doc))
    assert code == 0 and out["killing"]
    code, _, err = run(capsys, "complete", "heisenberg-h3")
    assert code == 1 and "no tensor" in err
    code, _, _ = run(capsys, "complete", "heisenberg-h3", save(tmp_path, "bad.json", {"degree": 1, "coeffs": {"1": "1"}}))
    assert code == 1


# ----------------------------------------------------------------- catalog

def test_catalog_list(capsys):
    code, doc = run_json(capsys, "catalog", "list")
    names = [e["name"] for e in doc["entries"]]
    assert code == 0 and "milnor(a,b,c)" in names and "free-2step-3gen" in names


def test_catalog_run(capsys):
    code, doc = run_json(capsys, "catalog", "run", "heisenberg-h3", "milnor(1,-2,3)")
    assert code == 0 and doc["all_ok"] and doc["results"]
    code, _, _ = run(capsys, "catalog", "run", "nope")
    assert code == 1


# ------------------------------------------------------------------ search

def test_search_all_true(capsys, tmp_path):
    code, doc = run_json(capsys, "search", "h3-plus-R", "--trials", "3", "--max-degree", "3",
                         "--witness-dir", str(tmp_path))
    assert code == 0
    assert doc["verdict_counts"] == {"true": 3, "false": 0} and doc["witnesses"] == []
    assert list(tmp_path.iterdir()) == []


def test_search_is_deterministic(capsys, tmp_path):
    argv = ["search", "solvable4-dimg2", "--trials", "2", "--seed", "5", "--max-degree", "3", "--format", "json"]
    outs = []
    for k in range(2):
        dest = tmp_path / f"run{k}.json"
        assert cli.main(argv + ["--output", str(dest)]) == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1]
    other = tmp_path / "other.json"
    cli.main(argv[:5] + ["6"] + argv[6:] + ["--output", str(other)])
    assert other.read_bytes() != outs[0]


def test_search_writes_witness(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(search, "check_killing_type", fake_failure(2))
    code, doc = run_json(capsys, "search", "heisenberg-h3", "--trials", "2", "--seed", "1",
                         "--max-degree", "2", "--witness-dir", str(tmp_path))
    assert code == 2 and doc["verdict_counts"]["false"] == 2
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["witness-heisenberg-h3-seed1-trial0.json", "witness-heisenberg-h3-seed1-trial1.json"]
    # the witness file is itself an algebra document usable by `complete`
    monkeypatch.undo()
    code, out = run_json(capsys, "complete", str(tmp_path / files[0]))
    assert code == 0 and out["tensor"] == {"degree": 2, "coeffs": {"2,0,0": "1"}}


def test_search_rejects_bad_trials(capsys):
    code, _, _ = run(capsys, "search", "solvable4-dimg2", "--trials", "0")
    assert code == 1


def test_write_json_is_canonical():
    assert write_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
