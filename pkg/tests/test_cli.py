"""Command-line interface: subcommands, report shape, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from leaktight import automaton_to_json
from leaktight.cli import main
from leaktight.zoo import det1, fig1, fig3, rnd3, sink

FIXTURE_BUILDERS = {
    "fig3": fig3,
    "det1": det1,
    "rnd3": rnd3,
    "sink": sink,
}


@pytest.fixture()
def fixture_file(tmp_path):
    def write(name: str, automaton=None) -> str:
        a = automaton if automaton is not None else FIXTURE_BUILDERS[name]()
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(automaton_to_json(a)))
        return str(path)

    return write


def run_json(capsys, argv: list[str]) -> dict:
    code = main(argv)
    out = capsys.readouterr().out
    assert code == 0, out
    return json.loads(out)


# ---------------------------------------------------------------------------
# Report envelope


def test_report_envelope_fields(capsys, fixture_file) -> None:
    path = fixture_file("fig3")
    report = run_json(capsys, ["validate", path])
    assert report["command"] == "validate"
    assert report["argv"] == ["validate", path]
    assert report["seed"] == 0
    assert report["digest"] == {"states": 2, "letters": 2, "p_min": "1/2"}
    assert "elapsed_ms" in report


def test_reports_are_reproducible_modulo_timing(capsys, fixture_file) -> None:
    path = fixture_file("fig3")
    first = run_json(capsys, ["monoid", path])
    second = run_json(capsys, ["monoid", path])
    first.pop("elapsed_ms")
    second.pop("elapsed_ms")
    assert json.dumps(first) == json.dumps(second)


def test_seed_is_echoed(capsys, fixture_file) -> None:
    path = fixture_file("fig3")
    report = run_json(capsys, ["validate", path, "--seed", "42"])
    assert report["seed"] == 42


def test_text_format(capsys, fixture_file) -> None:
    path = fixture_file("fig3")
    code = main(["validate", path, "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert "command: validate" in out


# ---------------------------------------------------------------------------
# Subcommand bodies


def test_value1_yes(capsys, fixture_file) -> None:
    report = run_json(capsys, ["value1", fixture_file("fig3")])
    assert report["value1"] == "yes"
    assert report["witness"] == "(a)#"
    assert report["leaktight"] == "yes"


def test_value1_no_with_bound(capsys, fixture_file) -> None:
    report = run_json(capsys, ["value1", fixture_file("sink")])
    assert report["value1"] == "no-with-bound"
    assert report["leaktight"] == "yes"
    assert "bound" in report


def test_value1_no_unreliable(capsys, fixture_file, tmp_path) -> None:
    path = fixture_file("fig1", fig1(F(1, 2)))
    report = run_json(capsys, ["value1", path])
    assert report["value1"] == "no-unreliable"
    assert report["leaktight"] == "no"


def test_leaktight_subcommand(capsys, fixture_file) -> None:
    report = run_json(capsys, ["leaktight", fixture_file("fig3")])
    assert report["leaktight"] == "yes"
    bad = run_json(capsys, ["leaktight", fixture_file("fig1", fig1(F(1, 3)))])
    assert bad["leaktight"] == "no"
    assert bad["witness"]["r"] == "L"
    assert bad["witness"]["q"] == "T"


def test_monoid_subcommand(capsys, fixture_file) -> None:
    report = run_json(capsys, ["monoid", fixture_file("fig3")])
    assert report["size"] == 5
    assert report["max_height"] == 1
    rendered = {element["expression"] for element in report["elements"]}
    assert rendered == {"ε", "a", "b", "b a", "(a)#"}


def test_extended_monoid_subcommand(capsys, fixture_file) -> None:
    report = run_json(capsys, ["extended-monoid", fixture_file("fig3")])
    assert report["size"] == 6


def test_sharp_height_subcommand(capsys, fixture_file) -> None:
    report = run_json(capsys, ["sharp-height", fixture_file("fig3")])
    assert report["sharp_height"] == 1


def test_classify_subcommand(capsys, fixture_file) -> None:
    report = run_json(capsys, ["classify", fixture_file("det1")])
    assert report["deterministic"] is True
    assert report["hierarchical"] is True
    assert report["sharp_acyclic"] is True
    assert report["leaktight"] == "yes"


def test_compose_subcommand(capsys, fixture_file, tmp_path) -> None:
    a, b = fixture_file("fig3"), fixture_file("det1")
    report = run_json(capsys, ["compose", "parallel", a, b])
    assert report["digest"]["states"] == 4
    composed = report["automaton"]
    assert composed["initial"] == "init"
    product = run_json(capsys, ["compose", "product", a, b])
    assert product["digest"]["states"] == 2


def test_reduce_subcommand(capsys, fixture_file) -> None:
    report = run_json(capsys, ["reduce", "basic", fixture_file("rnd3")])
    assert report["probabilistic_rows"] == 1
    assert report["mode"] == "basic"
    full = run_json(capsys, ["reduce", "full", fixture_file("rnd3")])
    assert full["digest"]["letters"] == 15
    third = run_json(capsys, ["reduce", "third", fixture_file("rnd3")])
    assert "sharp" in json.dumps(third)


def test_estimate_value_brute(capsys, fixture_file) -> None:
    report = run_json(
        capsys,
        ["estimate-value", fixture_file("fig1", fig1(F(1, 3))), "--max-len", "10"],
    )
    assert report["value"] == "1/2"
    assert report["value_approx"] == 0.5


def test_estimate_value_family(capsys, fixture_file) -> None:
    report = run_json(
        capsys,
        [
            "estimate-value",
            fixture_file("fig1", fig1(F(2, 3))),
            "(b a^n)^N",
            "--bind",
            "n=7",
            "--bind",
            "N=200",
        ],
    )
    assert F(report["value"]) >= F(95, 100)


def test_reify_check_subcommand(capsys, fixture_file) -> None:
    report = run_json(capsys, ["reify-check", fixture_file("fig3")])
    assert report["consistent"] is True
    assert report["n"] == 12
    assert report["lower_bound"]["ok"] is True


def test_stdin_input(tmp_path, capsys, monkeypatch) -> None:
    import io

    payload = json.dumps(automaton_to_json(fig3()))
    monkeypatch.setattr(sys, "stdin", io.StringIO(payload))
    report = run_json(capsys, ["validate", "-"])
    assert report["valid"] is True


# ---------------------------------------------------------------------------
# Errors and exit codes


def test_missing_file_is_exit_1(capsys) -> None:
    code = main(["validate", "no-such-file.json"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.err.startswith("error:")


def test_invalid_automaton_is_exit_1(capsys, tmp_path) -> None:
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {
                "states": ["q"],
                "alphabet": ["a"],
                "initial": "q",
                "final": [],
                "transitions": {"a": [["q", "q", "1/2"]]},
            }
        )
    )
    code = main(["validate", str(path)])
    captured = capsys.readouterr()
    assert code == 1
    assert "row sum" in captured.err


def test_cap_is_exit_2(capsys, fixture_file) -> None:
    code = main(["monoid", fixture_file("fig1", fig1(F(1, 2))), "--cap", "5"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.err.startswith("resource cap:")


def test_unknown_subcommand_is_exit_1(capsys) -> None:
    assert main(["frobnicate"]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_bad_flag_values_are_exit_1(capsys, fixture_file) -> None:
    path = fixture_file("fig3")
    assert main(["validate", path, "--seed", "-3"]) == 1
    capsys.readouterr()
    assert main(["validate", path, "--cap", "0"]) == 1
    capsys.readouterr()
    assert main(["estimate-value", path, "a^n", "--bind", "n=x"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_bad_family_template_is_exit_1(capsys, fixture_file) -> None:
    assert main(["estimate-value", fixture_file("fig3"), "(a"]) == 1
    assert "family syntax error" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# Console script


def test_console_script_runs() -> None:
    proc = subprocess.run(
        ["leaktight", "--help"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0
    assert "value1" in proc.stdout
