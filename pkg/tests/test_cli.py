"""Command-line interface: outputs, exit codes, diagnostics."""

import json
from pathlib import Path

import pytest

from roofflop.cli import main

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def test_rhom_vanishing_pair(capsys):
    code = main(
        ["rhom", "--space", "E_D4", "--ambient", "blowup", "O(1,-1)", "O(0,0)"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "0 in all degrees" in out


def test_rhom_nonzero_text(capsys):
    code = main(["rhom", "--space", "E_D4", "--ambient", "blowup", "O(0,0)", "U+^v(-1,1)"])
    assert code == 0
    assert "h^0 = 1" in capsys.readouterr().out


def test_rhom_json_mirrors_text(capsys):
    code = main(
        ["--format", "json", "rhom", "--space", "E_D4", "--ambient", "blowup",
         "O(1,-1)", "O(0,0)"]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"exact": True, "dims": {}}


def test_cohomology(capsys):
    assert main(["cohomology", "--space", "Q6", "O(-6)"]) == 0
    assert "h^6 = 1" in capsys.readouterr().out


def test_lemmas_van(capsys):
    code = main(["lemmas", "--which", "van"])
    out = capsys.readouterr().out
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("van ")]
    assert len(lines) == 6  # one line per lemma item
    assert all("PASS" in l for l in lines)


def test_lemmas_all_exit_zero():
    assert main(["lemmas", "--which", "all"]) == 0


def test_verify_writes_certificate(tmp_path, capsys):
    out_path = tmp_path / "cert.json"
    code = main(["verify", str(SCRIPTS / "d4_flop.mut"), "-o", str(out_path)])
    assert code == 0
    assert "PASS" in capsys.readouterr().out
    doc = json.loads(out_path.read_text())
    assert doc["verdict"] == "PASS"
    assert doc["relative_stamp"] is not None


def test_verify_failing_script_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.mut"
    bad.write_text("sod preset d4_plus\nstep exchange 1\n", encoding="utf-8")
    code = main(["verify", str(bad)])
    err = capsys.readouterr().err
    assert code == 1
    assert "FAIL" in err and "blocking fact" in err


def test_parse_error_exit_two_with_caret(capsys):
    code = main(["rhom", "--space", "E_D4", "O(1,", "O(0,0)"])
    err = capsys.readouterr().err
    assert code == 2
    assert "^" in err and "offset" in err


def test_unknown_space_exit_two(capsys):
    code = main(["cohomology", "--space", "P9", "O(1)"])
    assert code == 2


def test_missing_script_exit_two(capsys):
    assert main(["verify", "no_such_file.mut"]) == 2


def test_usage_error_exit_two():
    assert main(["frobnicate"]) == 2


def test_format_flag_never_changes_verdict(tmp_path):
    out_path = tmp_path / "c.json"
    text_code = main(["verify", str(SCRIPTS / "g2dagger.mut"), "-o", str(out_path)])
    json_code = main(
        ["--format", "json", "verify", str(SCRIPTS / "g2dagger.mut"), "-o", str(out_path)]
    )
    assert text_code == json_code == 0
