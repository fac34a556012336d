"""Command-line behavior: outputs, determinism, exit codes."""

import json

import pytest

from weakamp.cli import main


def run(argv):
    return main(argv)


def test_figure_writes_csv_and_png(tmp_path):
    out = tmp_path / "a.csv"
    assert run(["figure", "fig2b", "--out", str(out)]) == 0
    assert out.exists()
    assert (tmp_path / "a.png").exists()
    header = out.read_text().splitlines()
    assert header[0].startswith("# figure=fig2b ")
    assert header[1] == "n,q_over_sigma"


def test_figure_no_plot_skips_png(tmp_path):
    out = tmp_path / "b.csv"
    assert run(["figure", "fig2b", "--no-plot", "--out", str(out)]) == 0
    assert out.exists()
    assert not (tmp_path / "b.png").exists()


def test_figure_csv_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["figure", "fig2a", "--points", "200", "--no-plot", "--out", str(a)])
    run(["figure", "fig2a", "--points", "200", "--no-plot", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_figure_json_format(tmp_path):
    out = tmp_path / "c.json"
    assert run([
        "figure", "fig3b", "--format", "json", "--points", "16",
        "--no-plot", "--out", str(out),
    ]) == 0
    data = json.loads(out.read_text())
    assert data["figure"] == "fig3b"
    assert data["columns"] == ["alpha_abs", "beta", "q_over_sigma"]
    assert len(data["rows"]) == 16 * 16
    assert data["params"]["points"] == 16


def test_figure_set_override_lands_in_header(tmp_path):
    out = tmp_path / "d.csv"
    assert run([
        "figure", "fig2a", "--set", "theta=0.001", "--points", "50",
        "--no-plot", "--out", str(out),
    ]) == 0
    assert "theta=0.001" in out.read_text().splitlines()[0]


def test_outdir_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("WEAKAMP_OUTDIR", str(tmp_path))
    assert run(["figure", "fig2b", "--no-plot"]) == 0
    assert (tmp_path / "fig2b.csv").exists()


def test_unknown_figure_is_config_error(capsys):
    assert run(["figure", "fig9z", "--no-plot"]) == 2
    assert "unknown figure" in capsys.readouterr().err


def test_unknown_set_key_is_config_error(tmp_path):
    assert run([
        "figure", "fig2a", "--set", "bogus=1", "--no-plot",
        "--out", str(tmp_path / "x.csv"),
    ]) == 2


def test_malformed_set_pair_is_config_error(tmp_path):
    assert run([
        "figure", "fig2a", "--set", "theta", "--no-plot",
        "--out", str(tmp_path / "x.csv"),
    ]) == 2
    assert run([
        "figure", "fig2a", "--set", "theta=warm", "--no-plot",
        "--out", str(tmp_path / "x.csv"),
    ]) == 2


def test_too_few_points_is_config_error(tmp_path):
    assert run([
        "figure", "fig2a", "--points", "1", "--no-plot",
        "--out", str(tmp_path / "x.csv"),
    ]) == 2


def test_degenerate_parameters_are_numerical_error(tmp_path):
    # theta = 0 makes the dark port exactly dark at t = 0
    assert run([
        "figure", "fig2a", "--set", "theta=0", "--no-plot",
        "--out", str(tmp_path / "x.csv"),
    ]) == 3


def test_headline_reports_and_passes(capsys):
    assert run(["headline"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["all_pass"] is True
    assert rep["checks"]["Q1"]["pass"] is True


def test_headline_zero_temperature(capsys):
    assert run(["headline", "--temperature", "0"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["z_derived"] == 0.0
    assert rep["checks"]["max_amp_nm"]["value"] == rep["sigma_m"] * 1e9
    # the room-temperature reference values rightly fail at T = 0
    assert rep["all_pass"] is False


def test_headline_negative_temperature(capsys):
    assert run(["headline", "--temperature", "-4"]) == 2


def test_oracle_suite_passes(capsys):
    assert run(["oracle", "wm"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert "residual=" in out
