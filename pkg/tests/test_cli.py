"""Command-line front end: output shapes, exit codes, determinism."""

import json

import pytest

from heckelie.cli import USAGE_EXIT, run_command
from heckelie.hecke_modules import induce_standard, parse_segments


def _run(capsys, argv):
    code = run_command(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kl_text(capsys):
    code, out, _ = _run(capsys, ["kl", "1324", "3412", "--n", "4"])
    assert code == 0
    assert out.strip() == "1+q"


def test_kl_json(capsys):
    code, out, _ = _run(capsys, ["--format", "json", "kl", "1324", "3412", "--n", "4"])
    assert code == 0
    data = json.loads(out)
    assert data["coeffs"] == [1, 1]
    assert data["x"] == [1, 3, 2, 4] and data["y"] == [3, 4, 1, 2]
    # the flag is accepted after the subcommand as well
    code2, out2, _ = _run(capsys, ["kl", "1324", "3412", "--n", "4", "--format", "json"])
    assert code2 == 0 and out2 == out


def test_standard_dimension(capsys):
    code, out, _ = _run(capsys, ["standard", "--segments", "[0,1];[-1,-1]"])
    assert code == 0
    assert "dim: 3" in out


def test_functor_verma_json(capsys):
    code, out, _ = _run(
        capsys,
        [
            "functor",
            "verma",
            "--lambda",
            "(0,0)",
            "--mu",
            "(0,0)",
            "--ell",
            "2",
            "--format",
            "json",
        ],
    )
    assert code == 0
    data = json.loads(out)
    assert data["module"]["dim"] == 2
    assert data["segments"] == "[1/2,1/2];[-1/2,-1/2]"


def test_functor_simple(capsys):
    code, out, _ = _run(
        capsys, ["functor", "simple", "--lambda", "(0,0)", "--w", "s1", "--format", "json"]
    )
    assert code == 0
    assert json.loads(out)["module"]["dim"] == 1


def test_classify(capsys):
    code, out, _ = _run(capsys, ["classify", "--lambda", "(0,0)", "--format", "json"])
    assert code == 0
    assert json.loads(out)["count"] == 2


def test_decompose(capsys, tmp_path):
    path = tmp_path / "module.json"
    path.write_text(induce_standard(parse_segments("[0,1];[-1,-1]")).to_json())
    code, out, _ = _run(capsys, ["decompose", "--module", str(path), "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 3
    assert sorted(e["dim"] for e in data["factors"]) == [1, 2]


def test_decompose_missing_file(capsys):
    code, _, err = _run(capsys, ["decompose", "--module", "/no/such/file.json"])
    assert code == 1
    assert "error" in err


def test_bad_weight_literal_is_precondition_failure(capsys):
    code, _, err = _run(capsys, ["functor", "verma", "--lambda", "(spam)", "--mu", "(0,0)", "--ell", "2"])
    assert code == 1
    assert "error" in err


def test_rank_mismatch_is_precondition_failure(capsys):
    code, _, _ = _run(capsys, ["kl", "123", "3412", "--n", "4"])
    assert code == 1


def test_usage_errors(capsys):
    assert _run(capsys, ["spam"])[0] == USAGE_EXIT
    assert _run(capsys, ["kl", "12", "21"])[0] == USAGE_EXIT  # missing --n
    assert _run(capsys, ["verify", "--suite", "spam"])[0] == USAGE_EXIT


def test_byte_identical_output(capsys):
    argv = ["classify", "--lambda", "(1,0,-1)", "--format", "json"]
    first = _run(capsys, argv)
    second = _run(capsys, argv)
    assert first == second and first[0] == 0
