"""Command-line interface: subcommands, exit codes, reports, determinism."""

import json

import pytest

from ckgframes.cli import main


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


PAPER_CONFIG = {
    "scenario": {"kind": "paper_example", "m": 8},
    "requests": ["bounds", "verify"],
    "claimed": [1.0, 4.0],
    "seed": 5,
}


def test_bounds_subcommand(tmp_path, capsys):
    config = write_config(tmp_path, PAPER_CONFIG)
    assert main(["bounds", "--config", config]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["bounds"]["upper"] == pytest.approx(2.0)
    assert "verify" not in report["results"]  # single-op subcommand


def test_run_subcommand_writes_report(tmp_path):
    config = write_config(tmp_path, PAPER_CONFIG)
    out = tmp_path / "report.json"
    assert main(["run", "--config", config, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["results"]["verify"]["is_ckg_frame"] is True
    assert report["success"] is True


def test_paper_example_subcommand(tmp_path):
    out = tmp_path / "report.json"
    assert main(["paper-example", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["results"]["bounds"]["lower"] == pytest.approx(1.0, abs=1e-9)


def test_verification_failure_exit_code(tmp_path):
    config = write_config(
        tmp_path,
        {
            "scenario": {"kind": "paper_example", "m": 8},
            "requests": ["verify"],
            "claimed": [1.5, 4.0],
        },
    )
    assert main(["verify", "--config", config]) == 1


def test_input_error_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["run", "--config", str(bad)]) == 2
    assert main(["run", "--config", str(tmp_path / "missing.json")]) == 2
    invalid = write_config(tmp_path, {"scenario": {"kind": "wat"}}, name="invalid.json")
    assert main(["run", "--config", invalid]) == 2


def test_refine_subcommand_writes_csv(tmp_path):
    config = write_config(
        tmp_path,
        {
            "scenario": {"kind": "continuous_fourier", "dim": 4, "n_atoms": 64},
            "requests": ["refine"],
            "refine": {"values": [9, 18]},
        },
    )
    csv_path = tmp_path / "curve.csv"
    out = tmp_path / "report.json"
    assert main(["refine", "--config", config, "--csv", str(csv_path), "--out", str(out)]) == 0
    assert csv_path.read_text().startswith("n_atoms,")


def test_perturb_subcommand_with_overrides(tmp_path, capsys):
    config = write_config(
        tmp_path,
        {
            "scenario": {"kind": "paper_example", "m": 4},
            "perturb": {"delta": 0.1},
        },
    )
    assert main(["perturb", "--config", config, "--seed", "17", "--samples", "32"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["perturb"]["seed"] == 17
    assert report["results"]["perturb"]["samples"] == 32
    assert report["results"]["perturb"]["success"] is True


def test_reports_identical_across_runs(tmp_path):
    config = write_config(
        tmp_path,
        {
            "scenario": {"kind": "random", "dim": 4, "n_atoms": 6, "fiber_dims": 1, "seed": 3},
            "requests": ["bounds", "dual", "theta", "perturb"],
            "perturb": {"delta": 0.05},
            "samples": 32,
            "seed": 11,
        },
    )
    outputs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert main(["run", "--config", config, "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        payload.pop("wall_clock_seconds")
        outputs.append(json.dumps(payload, sort_keys=True))
    assert outputs[0] == outputs[1]
