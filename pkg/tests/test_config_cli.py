"""Configuration loading and the command-line interface."""
import json

import pytest

from deltalab import config as cfgmod
from deltalab.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run


def test_defaults_validate():
    cfg = cfgmod.RunConfig().validate()
    assert cfg.seed == 42 and cfg.delta.p == 43


def test_from_dict_overrides_and_rejects():
    cfg = cfgmod.from_dict({"seed": 7, "delta": {"N": 100}})
    assert cfg.seed == 7 and cfg.delta.N == 100.0
    with pytest.raises(cfgmod.ConfigError):
        cfgmod.from_dict({"delta": {"bogus": 1}})
    with pytest.raises(cfgmod.ConfigError):
        cfgmod.from_dict({"nosection": {"a": 1}})
    with pytest.raises(cfgmod.ConfigError):
        cfgmod.from_dict({"delta": {"p": 4.5}})
    with pytest.raises(cfgmod.ConfigError):
        cfgmod.from_dict({"delta": {"K": -1.0}})
    with pytest.raises(cfgmod.ConfigError):
        cfgmod.from_dict({"lfunc": {"t_max": "big"}})


def test_unknown_flag_and_command(capsys):
    assert run(["verify-delta", "--bogus"]) == EXIT_USAGE
    assert "usage" in capsys.readouterr().err
    assert run(["frobnicate"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE


def test_bad_config_file(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[delta]\nt = 'x'\n")
    assert run(["verify-delta", "--config", str(bad), "--out", str(tmp_path)]) == EXIT_USAGE
    assert run(["verify-delta", "--config", str(tmp_path / "missing.toml")]) == EXIT_USAGE
    broken = tmp_path / "broken.toml"
    broken.write_text("[delta\n")
    assert run(["verify-delta", "--config", str(broken)]) == EXIT_USAGE


def test_bad_scan_range(tmp_path):
    assert run(["scan-lfunc", "--t-min", "50", "--t-max", "20", "--out", str(tmp_path)]) == EXIT_USAGE


def test_summary_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["verify-delta", "--out", str(a)]) == EXIT_OK
    assert run(["verify-delta", "--out", str(b), "--threads", "2"]) == EXIT_OK
    assert (a / "summary.json").read_bytes() == (b / "summary.json").read_bytes()
    summary = json.loads((a / "summary.json").read_text())
    assert summary["passed"] and summary["seed"] == 42 and summary["failures"] == []


def test_seed_changes_corpus(tmp_path):
    run(["verify-delta", "--out", str(tmp_path / "a")])
    run(["verify-delta", "--out", str(tmp_path / "b"), "--seed", "7"])
    assert (tmp_path / "a" / "summary.json").read_bytes() != (tmp_path / "b" / "summary.json").read_bytes()


def test_config_file_applies(tmp_path):
    conf = tmp_path / "run.toml"
    conf.write_text("seed = 3\n[delta]\ncases = 5\n")
    assert run(["verify-delta", "--config", str(conf), "--out", str(tmp_path)]) == EXIT_OK
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["seed"] == 3 and summary["config"]["delta"]["cases"] == 5


def test_scan_lfunc_rows(tmp_path):
    code = run(["scan-lfunc", "--form", "eisenstein", "--t-max", "500", "--step", "0.25",
                "--out", str(tmp_path)])
    assert code == EXIT_OK
    assert len((tmp_path / "lfunc_scan.csv").read_text().splitlines()) == 1962
    dat = (tmp_path / "lfunc_scan.dat").read_text().splitlines()
    assert dat[0].startswith("# illustrative")


def test_verify_voronoi_small(tmp_path):
    code = run(["verify-voronoi", "--c-max", "20", "--n", "300", "--out", str(tmp_path)])
    assert code == EXIT_OK
    rows = (tmp_path / "voronoi.csv").read_text().splitlines()
    assert len(rows) - 1 >= 20
    metrics = json.loads((tmp_path / "summary.json").read_text())["suites"][0]["metrics"]
    assert metrics["identities"] >= 20 and metrics["max_rel_gap"] <= 1e-6


def test_failing_check_exits_2(tmp_path):
    conf = tmp_path / "strict.toml"
    conf.write_text("[delta]\nsmall_p = 5\n")
    assert run(["verify-delta", "--config", str(conf), "--out", str(tmp_path)]) == EXIT_FAIL
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["failures"] and not summary["passed"]
