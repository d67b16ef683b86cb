import csv
import io
import json

import pytest

from dunklwedge.cli import COLUMNS, run


def _csv(capsys):
    out = capsys.readouterr().out
    return list(csv.DictReader(io.StringIO(out)))


def test_density_csv(capsys):
    assert run(["density", "--p", "2", "--k", "0.75", "--grid", "0.1:5:6", "--method", "integral"]) == 0
    rows = _csv(capsys)
    assert len(rows) == 6 and list(rows[0]) == list(COLUMNS)
    assert all(float(r["value"]) > 0 for r in rows)


def test_bm_tail_routes_agree(capsys):
    run(["bm-tail", "--p", "2", "--phi-frac", "1/8", "--t", "0.3", "--method", "bessel"])
    a = float(_csv(capsys)[0]["value"])
    run(["bm-tail", "--p", "2", "--phi-frac", "1/8", "--t", "0.3", "--method", "squarewave"])
    b = float(_csv(capsys)[0]["value"])
    assert a == pytest.approx(b, abs=1e-12)


def test_output_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert run(["simulate", "--p", "2", "--k", "0.75", "--grid", "0.05:0.3:4", "--n-paths", "500",
                    "--seed", "3", "-o", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"p": 2, "k": 0.75, "grid": "0.1:1:3", "format": "json"}))
    assert run(["tail", "--config", str(cfg)]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 3 and rows[0]["k0"] == 0.75
    assert run(["tail", "--config", str(cfg), "--k", "0.9", "--t", "0.5"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 1 and rows[0]["k0"] == 0.9


@pytest.mark.parametrize(
    "argv",
    [
        ["tail", "--p", "2", "--k", "0.3", "--t", "1"],
        ["tail", "--p", "2", "--t", "1"],
        ["tail", "--p", "2", "--k", "0.75"],
        ["tail", "--p", "2", "--k", "0.75", "--t", "1", "--phi", "2.0"],
        ["density", "--p", "2", "--k", "0.75", "--t", "1", "--method", "nope"],
        ["bogus"],
        ["check", "--suite", "nope"],
    ],
)
def test_configuration_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_missing_config_file_exit_2(tmp_path):
    assert run(["tail", "--config", str(tmp_path / "missing.json")]) == 2


def test_numeric_failure_exit_1(capsys):
    assert run(["tail", "--p", "2", "--k", "0.75", "--t", "0.001", "--max-terms", "8"]) == 1


def test_check_suite_passes(capsys):
    assert run(["check", "--suite", "lemma1"]) == 0
    assert "PASS" in capsys.readouterr().out
