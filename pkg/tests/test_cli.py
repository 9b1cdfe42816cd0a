import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from geoflow import __version__
from geoflow.cli import CSV_COLUMNS, main

GOLDEN = Path(__file__).parent / "data" / "simulate_2_1_0.5.csv"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timestamp(text):
    return "\n".join(line for line in text.splitlines() if not line.startswith(("# timestamp", '"timestamp"')))


def parse_json(text):
    return json.loads(text)


def parse_csv(text):
    lines = text.splitlines()
    meta = json.loads(lines[0][len("# geoflow "):])
    assert lines[1].startswith("# timestamp ")
    rows = list(csv.reader(io.StringIO("\n".join(lines[2:]))))
    return meta, rows[0], [[float(x) for x in row] for row in rows[1:]]


# ---- simulate -----------------------------------------------------------------

def test_simulate_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "2", "--k", "1", "--r0", "0.5", "--speed", "harmonic",
                       "--t-max", "10", "--out-step", "0.1", "--format", "csv")
    assert code == 0
    meta, header, rows = parse_csv(out)
    assert tuple(header) == CSV_COLUMNS
    assert len(rows) == 101
    assert rows[-1][1] == pytest.approx(0.5 * math.asinh(math.exp(-10) * math.sinh(1)), abs=1e-12)
    assert rows[-1][1] == pytest.approx(2.668e-5, abs=5e-9)
    assert meta["version"] == __version__
    assert meta["parameters"]["speed"] == "harmonic"
    assert meta["parameters"]["out_step"] == 0.1
    assert meta["constants"]["RK_RTOL"] == 1e-10
    assert meta["termination"]["kind"] == "reached_t_max"


def test_simulate_matches_golden(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "2", "--k", "1", "--r0", "0.5", "--t-max", "1", "--out-step", "0.25")
    assert code == 0
    got = strip_timestamp(out).splitlines()
    want = GOLDEN.read_text().splitlines()
    assert got[:2] == want[:2]  # metadata and header byte for byte
    for g, w in zip(got[2:], want[2:], strict=True):
        assert [float(x) for x in g.split(",")] == pytest.approx([float(x) for x in w.split(",")], rel=1e-12)


def test_simulate_json(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "2", "--k", "2", "--r0", "1", "--t-max", "2", "--out-step", "1",
                       "--format", "json")
    assert code == 0
    doc = parse_json(out)
    assert doc["result"]["columns"] == list(CSV_COLUMNS)
    assert doc["result"]["samples"][-1][1] == pytest.approx(math.asinh(math.exp(-1) * math.sinh(1)), abs=1e-9)
    assert '"timestamp"' in out.splitlines()[1]


def test_simulate_extinction_json_has_no_nan(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "2", "--k", "0", "--r0", "1", "--t-max", "2", "--format", "json")
    assert code == 0
    doc = parse_json(out)
    assert doc["metadata"]["termination"]["kind"] == "extinction"
    assert doc["metadata"]["termination"]["time"] == pytest.approx(2 * math.log(math.cosh(1)), abs=1e-8)


def test_simulate_plot(tmp_path, capsys):
    svg = tmp_path / "flow.svg"
    code, _, _ = run(capsys, "simulate", "--n", "2", "--k", "1", "--r0", "0.5", "--t-max", "1", "--plot", str(svg))
    assert code == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "polyline" in text and text.rstrip().endswith("</svg>")


def test_simulate_is_deterministic(capsys):
    args = ("simulate", "--n", "3", "--k", "1", "--r0", "0.7", "--speed", "S2/S1", "--t-max", "3")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert strip_timestamp(a) == strip_timestamp(b)


def test_simulate_runtime_error_exit_1(capsys):
    code, _, err = run(capsys, "simulate", "--n", "2", "--k", "1", "--r0", "0.5", "--speed", "S1 - 4", "--t-max", "50")
    assert code == 1
    assert err.startswith("error [radial_flow]")


# ---- other subcommands ---------------------------------------------------------

def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--k", "1", "--m", "2", "--l", "1", "--r0", "0.5")
    assert code == 0
    doc = parse_json(out)
    assert doc["result"]["verdict"] == "finite"
    assert doc["result"]["exponent"] == 1
    assert doc["result"]["T0"] == pytest.approx(0.2090264, abs=5e-8)
    assert "|m-(n-k)| > |l-(n-k)|" in doc["metadata"]["direction_note"]


def test_classify_torus_infinite(capsys):
    _, out, _ = run(capsys, "classify", "--n", "2", "--k", "1", "--m", "2", "--l", "1", "--r0", "0.5")
    result = parse_json(out)["result"]
    assert result["verdict"] == "infinite" and result["T0"] is None


def test_lifetime(capsys, monkeypatch):
    monkeypatch.setenv("GEOFLOW_SEED", "7")
    code, out, _ = run(capsys, "lifetime", "--n", "2", "--k", "1", "--speed", "S1", "--r0", "0.5")
    assert code == 0
    doc = parse_json(out)
    assert doc["result"]["T0"] == pytest.approx(0.1084452, abs=5e-8)
    assert doc["result"]["parabolicity"]["verdict"] == "parabolic"
    assert doc["result"]["parabolicity"]["seed"] == 7
    assert doc["metadata"]["seed"] == 7
    assert "direction_note" in doc["metadata"]


def test_lifetime_degenerate_exit_1(capsys):
    code, _, err = run(capsys, "lifetime", "--n", "2", "--k", "1", "--speed", "S1 - 2.5", "--r0", "1")
    assert code == 1
    assert err.startswith("error [classify]")


def test_area_law(capsys):
    code, out, _ = run(capsys, "area-law", "--genus", "0", "--v0", "30")
    assert code == 0
    result = parse_json(out)["result"]
    assert result["case"] == "III"
    assert result["extinction"] == pytest.approx(1.220040, abs=5e-7)
    assert result["nonexistent_under_F_half"] is True
    _, out, _ = run(capsys, "area-law", "--genus", "2", "--v0", str(4 * math.pi * math.cosh(1) ** 2), "--t", "1")
    assert parse_json(out)["result"]["V_t"] == pytest.approx(18.951061, abs=5e-6)


def test_area_law_past_extinction_exit_1(capsys):
    code, _, err = run(capsys, "area-law", "--genus", "0", "--v0", "30", "--t", "5")
    assert code == 1
    assert "extinction" in err


def test_envelope(capsys):
    code, out, _ = run(capsys, "envelope", "--n", "2", "--k", "1", "--r0", "0.5", "--t-max", "10")
    assert code == 0
    result = parse_json(out)["result"]
    assert result["ok"] and result["violations"] == []
    assert result["blowup"]["H"] > 1e3
    assert result["decay_functional"]["final"] < 1e-3 * result["decay_functional"]["initial"]


def test_envelope_hypothesis_violation_exit_1(capsys):
    code, _, err = run(capsys, "envelope", "--n", "2", "--k", "0", "--r0", "1", "--t-max", "0.5")
    assert code == 1
    assert "1/n" in err


def test_sweep_to_file(tmp_path, capsys):
    path = tmp_path / "atlas.json"
    code, out, _ = run(capsys, "sweep", "--n-max", "2", "--r0", "0.5", "--output", str(path))
    assert code == 0 and out == ""
    records = json.loads(path.read_text())["result"]
    assert len(records) == 35
    assert all(r["agreement"] for r in records)
    keys = [(r["n"], r["k"], r["m"], r["l"]) for r in records]
    assert keys == sorted(keys)
    by_key = dict(zip(keys, records))
    assert by_key[(2, 1, 2, 1)]["verdict"] == "infinite"
    assert by_key[(2, 1, 1, 0)]["T0"] == pytest.approx(0.1084452, abs=5e-8)


def test_sweep_unwritable_output_exit_1(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--n-max", "1", "--output", str(tmp_path / "missing" / "x.json"))
    assert code == 1
    assert err.startswith("error [io]")


# ---- usage errors ----------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--n", "2", "--k", "1", "--r0", "0.5", "--speed", "S1/0"],
        ["simulate", "--n", "2", "--k", "3", "--r0", "0.5"],
        ["simulate", "--n", "0", "--k", "0", "--r0", "0.5"],
        ["simulate", "--n", "2", "--k", "1", "--r0", "-1"],
        ["simulate", "--n", "2", "--k", "1", "--r0", "40"],
        ["simulate", "--n", "2", "--k", "1", "--r0", "0.5", "--format", "xml"],
        ["classify", "--n", "2", "--k", "1", "--m", "3", "--l", "0", "--r0", "0.5"],
        ["sweep", "--n-max", "7"],
        ["area-law", "--genus", "-1", "--v0", "3"],
        ["area-law", "--genus", "1", "--v0", "3", "--t", "-2"],
        ["lifetime", "--n", "2", "--k", "1", "--r0", "0.5", "--speed", "S1 +"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_bad_seed_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("GEOFLOW_SEED", "abc")
    with pytest.raises(SystemExit) as exc:
        main(["area-law", "--genus", "1", "--v0", "3"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "geoflow", "area-law", "--genus", "1", "--v0", "2", "--t", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["V_t"] == pytest.approx(2 * math.exp(-1), rel=1e-15)
