"""Command line front end: suites, convergence studies, demos, exit codes,
and byte-level determinism of reports."""

import json

import numpy as np
import pytest

from mapforms.cli import main
from mapforms.report import TestRecord
from mapforms.suites import SUITES


def test_verify_runs_and_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", "--suite", "fiber-rules", "--seed", "7",
                 "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "checks passed" in text
    payload = json.loads(out.read_text())
    assert payload["passed"] is True
    assert payload["environment"]["seed"] == 7
    assert payload["environment"]["conventions"]
    for record in payload["records"]:
        assert record["statement"]
        assert record["residual"] <= record["tolerance"] or not record["passed"]
        assert record["mesh"]


def test_verify_reports_are_byte_identical(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert main(["verify", "--suite", "fiber-rules", "--seed", "3",
                     "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_verify_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    assert main(["verify", "--suite", "branes", "--seed", "5", "--out",
                 str(out), "--format", "csv"]) == 0
    header = out.read_text().splitlines()[0]
    assert header.startswith("test_id,statement,residual,tolerance,passed")


def test_verify_usage_errors():
    assert main(["verify"]) == 2
    assert main(["verify", "--suite", "not-a-suite"]) == 2


def test_verify_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 11, "suites": ["branes"]}))
    assert main(["verify", "--config", str(cfg)]) == 0
    cfg.write_text(json.dumps({"seed": 11, "bogus_key": 1}))
    assert main(["verify", "--config", str(cfg), "--suite", "branes"]) == 2


def test_verify_failure_exit_code(monkeypatch, capsys):
    def failing_suite(config):
        return [TestRecord(test_id="always-fails", statement="x = y",
                           residual=1.0, tolerance=1e-6, passed=False,
                           seed=config.seed, mesh={})]

    monkeypatch.setitem(SUITES, "synthetic-failure", failing_suite)
    code = main(["verify", "--suite", "synthetic-failure"])
    assert code == 1
    text = capsys.readouterr().out
    # a failing record names the identity and the residual/tolerance pair
    assert "always-fails" in text
    assert "1.000e+00" in text and "1.0e-06" in text


def test_converge_fits_second_order(tmp_path, capsys):
    out = tmp_path / "table.csv"
    code = main(["converge", "--identity", "derivation-circle",
                 "--levels", "32,64,128,256", "--seed", "7",
                 "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    order = float(text.split("fitted order vs 1/nodes:")[1].splitlines()[0])
    assert order >= 1.9
    rows = out.read_text().splitlines()
    assert rows[0] == "nodes,fd_step,residual"
    assert len(rows) == 5


def test_converge_spectral_floor(capsys):
    assert main(["converge", "--identity", "quadrature-circle",
                 "--levels", "32,64,128", "--seed", "7"]) == 0
    assert "floor" in capsys.readouterr().out


def test_converge_single_level_reports_na(capsys):
    assert main(["converge", "--identity", "derivation-circle",
                 "--levels", "64", "--seed", "7"]) == 0
    assert "n/a" in capsys.readouterr().out


def test_converge_unknown_identity():
    assert main(["converge", "--identity", "nope"]) == 2


def test_demo_mw_links(tmp_path, capsys):
    out = tmp_path / "demo"
    assert main(["demo", "mw-links", "--seed", "7", "--out", str(out)]) == 0
    summary = json.loads((out / "mw-links.json").read_text())
    assert summary["circle_value"] == pytest.approx(2 * np.pi, abs=1e-8)
    assert summary["passed"] is True
    assert (out / "mw-links.csv").exists()


def test_demo_dualpair(tmp_path):
    out = tmp_path / "demo"
    assert main(["demo", "dualpair", "--seed", "7", "--out", str(out)]) == 0
    summary = json.loads((out / "dualpair.json").read_text())
    assert summary["commutation_error"] < 1e-12
    assert summary["passed"] is True


def test_demo_branes(tmp_path):
    out = tmp_path / "demo"
    assert main(["demo", "branes", "--seed", "7", "--out", str(out)]) == 0
    summary = json.loads((out / "branes.json").read_text())
    assert summary["passed"] is True


def test_demo_unknown_name():
    assert main(["demo", "no-such-demo"]) == 2
