import json

import pytest

from app import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_every_command_is_registered():
    parser = build_parser()
    for name in ("parse", "indec", "silting", "repdim", "verify", "tilting-scan"):
        assert parser.parse_args([name, "ALG-A3"] if name != "verify" else [name]).command == name


def test_parse_algebra(capsys):
    code, out, _ = run(capsys, "parse", "ALG-A3")
    assert code == 0
    assert "dimension 6" in out
    assert as_json(capsys, "parse", "ALG-GEN4")["dim"] == 8


def test_parse_complex_reports_cohomology(capsys):
    payload = as_json(capsys, "parse", "P-43")
    assert payload["kind"] == "complex"
    assert payload["h-1"] == "1"


def test_parse_field_override(capsys):
    assert as_json(capsys, "parse", "ALG-A3", "--field", "3")["field"] == 3


def test_indec(capsys):
    payload = as_json(capsys, "indec", "ALG-A3")
    assert payload["count"] == 6
    assert payload["complete"] is True


def test_indec_brute_force(capsys):
    payload = as_json(capsys, "indec", "ALG-A3", "--brute-force", "--catalog-bound", "2")
    assert payload["brute_force_agrees"] is True


def test_repdim(capsys):
    code, out, _ = run(capsys, "repdim", "ALG-HER4")
    assert code == 0
    assert "rep.dim ALG-HER4 = 3" in out
    assert "~A3" in out


def test_silting_report(capsys):
    payload = as_json(capsys, "silting", "P-43")
    assert payload["silting"] is True
    assert payload["tilting"] is True
    assert payload["separating"] is True
    assert sorted(payload["torsion_pair"]["T"]) == ["2", "3", "3/2"]
    assert payload["B_dim"] == 6


def test_verify_single_complex(capsys):
    code, out, _ = run(capsys, "verify", "P-43")
    assert code == 0
    assert "rep.dim comparison" in out


def test_verify_worked_example(capsys):
    code, out, _ = run(capsys, "verify", "--example", "4.3")
    assert code == 0
    assert "P-43" in out


def test_verify_example_runs_complex_and_module(capsys):
    _, out, _ = run(capsys, "verify", "--example", "4.1", "--format", "json")
    payload = json.loads(out)
    assert sorted(payload) == ["P-41", "T-41"]
    comparison = next(r for r in payload["P-41"] if r["check"] == "rep.dim comparison")
    assert comparison["verdict"] == "inapplicable"
    assert comparison["data"] == {"rep_dim_A": "3", "rep_dim_B": "2"}


def test_verify_examples_combine(capsys):
    _, out, _ = run(capsys, "verify", "P-43", "--example", "4.2", "--example", "4.3", "--format", "json")
    assert sorted(json.loads(out)) == ["P-42", "P-43"]


def test_verify_scan(capsys):
    payload = as_json(capsys, "verify", "--scan", "ALG-A3")
    assert len(payload["scan"]["complexes"]) == 14


def test_tilting_scan_against(capsys):
    payload = as_json(capsys, "tilting-scan", "ALG-A3", "--against", "P-43")
    assert len(payload["tilting_modules"]) == 5
    assert payload["against"]["matches"] == []


@pytest.mark.parametrize("argv", [
    ["parse", "NO-SUCH-FIXTURE"],
    ["verify"],
    ["verify", "ALG-A3"],
    ["parse", "ALG-A3", "--field", "4"],
])
def test_errors_exit_with_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error: ")
