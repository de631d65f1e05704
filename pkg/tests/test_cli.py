from __future__ import annotations

import csv
import json

import pytest

from m2codes import __version__
from m2codes.cli import SEARCH_CSV_COLUMNS, main
from m2codes.reference_codes import BINARY_LENGTH3, TERNARY_LENGTH4, binary_literal_spec

PROVENANCE = {"tool_version", "p", "n", "command", "parameters"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    doc = json.loads(out)
    assert PROVENANCE <= doc.keys()
    assert doc["tool_version"] == __version__
    return doc


def test_tables_p2(capsys):
    doc = run_json(capsys, "tables", "--p", "2")
    assert doc["command"] == "tables"
    assert len(doc["matrix_table"]) == 16 and len(doc["chain_table"]) == 16


def test_tables_p3(capsys):
    doc = run_json(capsys, "tables", "--p", "3")
    assert len(doc["matrix_table"]) == 81 and len(doc["chain_table"]) == 81


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_tables_other_formats(capsys, fmt):
    code, out, _ = run(capsys, "tables", "--p", "2", "--format", fmt)
    assert code == 0 and out.strip()


def test_tables_gamma_column(capsys):
    doc = run_json(capsys, "tables", "--p", "2", "--gamma", "3/2")
    assert doc["parameters"]["gamma"] == "3/2"
    assert "w_hom" in doc["matrix_table"][0]


def test_tables_unsupported_prime(capsys):
    assert run(capsys, "tables", "--p", "11")[0] == 2


@pytest.mark.parametrize("p,n,k", [(3, 4, 4), (2, 3, 3)])
def test_factor_counts(capsys, p, n, k):
    doc = run_json(capsys, "factor", "--p", str(p), "--n", str(n))
    assert len(doc["factors"]) == k and doc["n"] == n


def test_factor_not_coprime(capsys):
    assert run(capsys, "factor", "--p", "2", "--n", "4")[0] == 2


def test_build_binary_reference(capsys):
    label = BINARY_LENGTH3.spec().label()
    doc = run_json(capsys, "build", "--p", "2", "--n", "3", "--assignment", label)
    m = doc["metrics"]
    assert (m["cardinality"], m["d_nhom"], m["d_B"], m["d_Ham"], m["d_L"]) == (64, "2", 3, 2, 3)
    assert doc["parameters"]["assignment"] == label


def test_build_ternary_reference(capsys):
    label = TERNARY_LENGTH4.spec().label()
    m = run_json(capsys, "build", "--p", "3", "--n", "4", "--assignment", label)["metrics"]
    assert (m["cardinality"], m["d_nhom"], m["d_B"], m["d_Ham"]) == (729, "27/8", 4, 3)


def test_build_zero_code(capsys):
    m = run_json(capsys, "build", "--p", "2", "--n", "3", "--assignment", "0,0,0")["metrics"]
    assert m["cardinality"] == 1 and m["d_B"] is None


def test_build_generator(capsys):
    label = BINARY_LENGTH3.spec().label()
    doc = run_json(capsys, "build", "--p", "2", "--n", "3", "--assignment", label, "--generator")
    assert len(doc["generator"]) == 6 and len(doc["generator"][0]) == 12


def test_build_mismatch_exit_and_override(capsys):
    label = binary_literal_spec().label()
    assert run(capsys, "build", "--p", "2", "--n", "3", "--assignment", label)[0] == 3
    doc = run_json(capsys, "build", "--p", "2", "--n", "3", "--assignment", label, "--allow-mismatch")
    assert doc["status"] == "cardinality_mismatch" and doc["metrics"]["cardinality"] == 256


def test_build_bad_assignment(capsys):
    assert run(capsys, "build", "--p", "2", "--n", "3", "--assignment", "0,1")[0] == 2
    assert run(capsys, "build", "--p", "2", "--n", "3", "--assignment", "a,b")[0] == 1


def test_build_cap_exceeded(capsys):
    assert run(capsys, "build", "--p", "2", "--n", "3", "--assignment", "1,1,1", "--cap", "100")[0] == 2


@pytest.mark.parametrize("argv", [
    ["build", "--p", "2", "--n", "3"],
    ["factor", "--p", "2"],
    ["nonsense"],
    ["tables", "--gamma", "-1"],
    ["tables", "--cap", "0"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_search_writes_cache(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--p", "2", "--n", "3", "--out", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "p2_n3.json").read_text())
    assert PROVENANCE <= doc.keys() and len(doc["rows"]) == 27
    with open(tmp_path / "p2_n3.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert tuple(rows[0].keys()) == SEARCH_CSV_COLUMNS and len(rows) == 27
    first = (tmp_path / "p2_n3.json").read_bytes()
    run(capsys, "search", "--p", "2", "--n", "3", "--out", str(tmp_path))
    assert (tmp_path / "p2_n3.json").read_bytes() == first


def test_search_large_codes_not_enumerated(capsys, tmp_path):
    assert run(capsys, "search", "--p", "2", "--n", "7", "--cap", "4096", "--out", str(tmp_path))[0] == 0
    rows = json.loads((tmp_path / "p2_n7.json").read_text())["rows"]
    assert len(rows) == 27
    assert any(not r["enumerated"] for r in rows) and any(r["enumerated"] for r in rows)


def test_examples(capsys):
    doc = run_json(capsys, "examples")
    assert doc["summary"]["fail"] == 0
    assert {c["name"]: c["status"] for c in doc["codes"]} == {
        "binary-length-3": "pass", "ternary-length-4": "pass"}


def test_verify_p2(capsys):
    doc = run_json(capsys, "verify", "--p", "2")
    assert doc["summary"]["fail"] == 0


def test_out_dir(capsys, tmp_path):
    assert run(capsys, "factor", "--p", "2", "--n", "3", "--out", str(tmp_path))[0] == 0
    assert list(tmp_path.iterdir())


@pytest.mark.parametrize("argv", [
    ["tables", "--p", "3"],
    ["factor", "--p", "7", "--n", "9"],
    ["build", "--p", "3", "--n", "4", "--assignment", "0,0,2,1"],
    ["examples"],
])
def test_deterministic_output(capsys, argv):
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
