import json

import pytest

from twalex import data_path
from twalex.cli import BANNER, main, parse_range
from twalex.exprio import load_matrix, parse_matrix, parse_poly
from twalex.invariant import equal_up_to_unit


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_compute_b3(capsys):
    code, out, _ = run(capsys, "compute", "--group", "b3", "--rep", "tym")
    assert code == 0
    assert "Delta          1 + t*z^3" in out
    assert "certification  exact" in out


def test_compute_records(capsys):
    code, out, _ = run(capsys, "--output", "records", "compute", "--group", "b3", "--rep", "rburau")
    (rec,) = records(out)
    assert code == 0
    assert equal_up_to_unit(parse_poly(rec["delta"]), parse_poly("1 - t*z^2"))
    code, again, _ = run(capsys, "compute", "--group", "b3", "--rep", "rburau", "--output", "records")
    assert again == out


def test_compute_b5_certified(capsys):
    code, out, _ = run(capsys, "compute", "--group", "b5", "--rep", "tym", "--strategy", "seeded",
                       "--divisor", "(1-z)^3*(1-t*z^2)", "--output", "records")
    (rec,) = records(out)
    assert code == 0
    assert rec["delta"] == "1" and rec["certification"] == "exact"
    assert rec["column"] == "s4"


def test_seeded_without_divisor_prints_banner(capsys):
    code, out, _ = run(capsys, "compute", "--group", "b4", "--rep", "burau", "--strategy", "seeded",
                       "--samples", "10")
    assert code == 0
    assert BANNER in out


def test_ceiling_refusal(capsys):
    code, _, err = run(capsys, "compute", "--group", "wb4", "--rep", "wtym")
    assert code == 2
    assert "ceiling" in err
    code, _, err = run(capsys, "compute", "--group", "b4", "--rep", "tym", "--ceiling", "100")
    assert code == 2


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("TWALEX_CEILING", "10")
    code, _, err = run(capsys, "compute", "--group", "b4", "--rep", "tym")
    assert code == 2 and "ceiling 10" in err
    monkeypatch.setenv("TWALEX_OUTPUT", "records")
    code, out, _ = run(capsys, "compute", "--group", "b3", "--rep", "tym")
    assert records(out)[0]["delta"] == "1 + t*z^3"


def test_matrix_b4_fixture(capsys):
    code, out, _ = run(capsys, "matrix", "--group", "b4", "--rep", "tym", "--drop", "s3", "--output", "records")
    (rec,) = records(out)
    assert code == 0 and (rec["rows"], rec["cols"]) == (12, 8)
    assert parse_matrix(rec["matrix"]) == load_matrix(data_path("b4_tym_drop_s3.mat"))


def test_matrix_text_table(capsys):
    code, out, _ = run(capsys, "matrix", "--group", "b3", "--rep", "tym")
    lines = out.splitlines()
    assert code == 0
    assert "3 x 6" in lines[0]
    assert lines[1].split() == ["s1.1", "s1.2", "s1.3", "s2.1", "s2.2", "s2.3"]
    assert lines[2].startswith("[1,2].1")


def test_validate_wb3(capsys):
    code, out, _ = run(capsys, "validate", "--group", "wb3", "--rep", "wtym")
    assert code == 0
    assert out.count("PASS") == 1 + 4 + 6 and "FAIL" not in out


def test_validate_cross(capsys):
    code, out, _ = run(capsys, "validate", "--group", "b4", "--rep", "tym", "--cross", "--cross-samples", "10",
                       "--output", "records")
    recs = records(out)
    assert code == 0 and all(r["ok"] for r in recs)
    assert any(r["check"].startswith("column identity") for r in recs)
    assert any(r["check"].startswith("invariant column") for r in recs)


def test_validate_corrupt(capsys):
    code, out, _ = run(capsys, "validate", "--group", "b3", "--rep", data_path("b3_tym_corrupt.rep"))
    assert code == 1
    assert "FAIL  relator [1,2] maps to identity" in out


def test_file_inputs(capsys):
    code, out, _ = run(capsys, "compute", "--group", data_path("b3_torus.pres"),
                       "--rep", data_path("b3_torus_tym.rep"), "--output", "records")
    assert code == 0
    assert equal_up_to_unit(parse_poly(records(out)[0]["delta"]), parse_poly("1 + t*z^3"))
    code, out, _ = run(capsys, "compute", "--group", data_path("f3_one_relator.pres"), "--rep", "tym2")
    assert code == 0 and "Delta          0" in out


def test_bad_selectors(capsys):
    assert run(capsys, "compute", "--group", "c3", "--rep", "tym")[0] == 2
    assert run(capsys, "compute", "--group", "b3", "--rep", "foo")[0] == 2
    assert run(capsys, "compute", "--group", "b3", "--rep", "tym", "--drop", "s7")[0] == 2
    assert run(capsys, "compute", "--group", "b3", "--rep", "tym", "--divisor", "1 +")[0] == 2
    assert run(capsys, "compute", "--group", data_path("b3_torus.pres"), "--rep", "tym")[0] == 2


def test_reproduce_thm12(capsys):
    code, out, _ = run(capsys, "reproduce", "thm1.2", "--n", "3..4", "--output", "records")
    recs = records(out)
    assert code == 0
    assert [(r["n"], r["computed"], r["match"]) for r in recs] == [(3, "1 + t*z^3", True), (4, "1", True)]


def test_reproduce_structured(capsys):
    code, out, _ = run(capsys, "reproduce", "lemma4.3", "--n", "4")
    assert code == 0
    assert out.count("MATCH") == 2 and "MISMATCH" not in out


def test_reproduce_refusal_is_mismatch(capsys):
    code, out, _ = run(capsys, "reproduce", "thm1.1", "--n", "5")
    assert code == 1 and "ceiling" in out


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("4") == [4]
