import json
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

from borderwalk import Categorical, Real, SpaceSchema, save_schema
from borderwalk.cli import main

STUB = str(Path(__file__).parent / "stub_server.py")


def run_cli(*argv):
    return main(list(argv))


def test_explore_deterministic_pairs_file(tmp_path, capsys):
    args = (
        "explore", "--subject", "sin2", "--strategy", "random-walk",
        "--walks", "120", "--steps", "20", "--walk-distance", "20",
        "--seed", "7", "--pool-size", "60",
    )
    assert run_cli(*args, "--out", str(tmp_path / "one")) == 0
    out1 = capsys.readouterr().out
    assert run_cli(*args, "--out", str(tmp_path / "two")) == 0
    out2 = capsys.readouterr().out
    assert out1.splitlines()[0] == out2.splitlines()[0]
    assert out1.splitlines()[0].startswith("pairs=")
    b1 = (tmp_path / "one" / "pairs.jsonl").read_bytes()
    b2 = (tmp_path / "two" / "pairs.jsonl").read_bytes()
    assert b1 == b2 and b1


def test_explore_jobs_flag_keeps_results_identical(tmp_path, capsys):
    args = (
        "explore", "--subject", "circle2", "--strategy", "random-target",
        "--walks", "100", "--seed", "13", "--pool-size", "50",
    )
    assert run_cli(*args, "--jobs", "1", "--out", str(tmp_path / "serial")) == 0
    assert run_cli(*args, "--jobs", "3", "--out", str(tmp_path / "parallel")) == 0
    capsys.readouterr()
    assert (tmp_path / "serial" / "pairs.jsonl").read_bytes() == (
        tmp_path / "parallel" / "pairs.jsonl"
    ).read_bytes()


def test_explore_summary_line_fields(tmp_path, capsys):
    assert run_cli(
        "explore", "--subject", "box2", "--strategy", "random-target",
        "--walks", "80", "--seed", "3", "--out", str(tmp_path),
    ) == 0
    line = capsys.readouterr().out.splitlines()[0]
    assert all(key in line for key in ("pairs=", "executions=", "capability=", "cost="))


def test_explore_over_bridge(tmp_path, capsys):
    schema = SpaceSchema((Real("a", -5.0, 5.0, 0.5), Real("b", -5.0, 5.0, 0.5)))
    schema_path = tmp_path / "schema.json"
    save_schema(schema, schema_path)
    code = run_cli(
        "explore", "--bridge", f"{sys.executable} {STUB}", "--schema", str(schema_path),
        "--strategy", "random-target", "--walks", "40", "--seed", "5",
        "--out", str(tmp_path / "out"),
    )
    assert code == 0
    records = [json.loads(l) for l in (tmp_path / "out" / "pairs.jsonl").read_text().splitlines()]
    assert len(records) == 40
    assert any(r["found"] for r in records)


def test_explore_config_errors(tmp_path):
    # bridge without schema
    assert run_cli("explore", "--bridge", "cmd", "--strategy", "random-target") == 1
    # neither source
    assert run_cli("explore", "--strategy", "random-target") == 1
    # both sources
    assert run_cli(
        "explore", "--subject", "sin2", "--bridge", "cmd", "--strategy", "random-target"
    ) == 1
    # unknown subject
    assert run_cli("explore", "--subject", "hexagon", "--strategy", "random-target") == 1
    # schema with subject
    schema_path = tmp_path / "s.json"
    save_schema(SpaceSchema((Real("x", 0, 1, 0.1),)), schema_path)
    assert run_cli(
        "explore", "--subject", "sin2", "--schema", str(schema_path),
        "--strategy", "random-target",
    ) == 1


def test_explore_bridge_failure_is_runtime_error(tmp_path):
    schema_path = tmp_path / "schema.json"
    save_schema(SpaceSchema((Real("a", -5.0, 5.0, 0.5), Real("b", -5.0, 5.0, 0.5))), schema_path)
    code = run_cli(
        "explore", "--bridge", f"{sys.executable} -c 'import sys; sys.exit(3)'",
        "--schema", str(schema_path), "--strategy", "random-target", "--walks", "5",
        "--out", str(tmp_path / "out"),
    )
    assert code == 2


def test_seed_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PARETO_SEED", "99")
    args = (
        "explore", "--subject", "sin1", "--strategy", "random-target",
        "--walks", "50", "--pool-size", "40",
    )
    assert run_cli(*args, "--out", str(tmp_path / "a")) == 0
    capsys.readouterr()
    assert run_cli(*args, "--out", str(tmp_path / "b")) == 0
    assert (tmp_path / "a" / "pairs.jsonl").read_bytes() == (
        tmp_path / "b" / "pairs.jsonl"
    ).read_bytes()


def test_experiment_grid_writes_csv_per_combo(tmp_path):
    code = run_cli(
        "experiment", "--subject", "all", "--strategy", "all",
        "--walks", "20", "--repetitions", "1", "--pool-size", "30",
        "--seed", "2", "--out", str(tmp_path), "--run-id", "t",
    )
    assert code == 0
    reports = sorted((tmp_path / "runs").glob("*/t/report.csv"))
    assert len(reports) == 30


def test_experiment_sweep_render(tmp_path):
    code = run_cli(
        "experiment", "--subject", "sin2", "--strategy", "random-target",
        "--sweep", "50:100:50", "--repetitions", "2", "--pool-size", "40",
        "--seed", "4", "--out", str(tmp_path), "--run-id", "r1", "--render",
    )
    assert code == 0
    base = tmp_path / "runs" / "sin2-random-target" / "r1"
    lines = (base / "report.csv").read_text().strip().splitlines()
    assert sum(1 for l in lines if l.startswith("rep,")) == 4
    assert sum(1 for l in lines if l.startswith("mean,")) == 2
    root = ET.parse(base / "front.svg").getroot()
    assert root.tag.endswith("svg")


def test_experiment_render_non_2d_warns_not_fails(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("STUB_KINDS", '["categorical","real"]')
    schema = SpaceSchema((Categorical("c", ("x", "y")), Real("r", 0.0, 1.0, 0.1)))
    schema_path = tmp_path / "schema.json"
    save_schema(schema, schema_path)
    code = run_cli(
        "experiment", "--bridge", f"{sys.executable} {STUB}", "--schema", str(schema_path),
        "--strategy", "random-target", "--walks", "10", "--repetitions", "1",
        "--pool-size", "20", "--seed", "1", "--out", str(tmp_path), "--run-id", "w",
        "--render",
    )
    err = capsys.readouterr().err
    assert code == 0
    assert "render" in err


def test_plan_path_categorical(tmp_path, capsys):
    schema_path = tmp_path / "cats.json"
    save_schema(SpaceSchema((Categorical("c", ("a", "b", "c", "d")),)), schema_path)
    code = run_cli("plan-path", "--schema", str(schema_path), "--from", "a", "--to", "d")
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "U0 U0 U0"
    assert out[1] == "residual=0.0"


def test_plan_path_real(tmp_path, capsys):
    schema_path = tmp_path / "real.json"
    save_schema(SpaceSchema((Real("x", 0.0, 10.0, 0.2),)), schema_path)
    code = run_cli(
        "plan-path", "--schema", str(schema_path), "--from", "0.0", "--to", "9.9",
        "--delta", "1e-3",
    )
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0].startswith("U0 U0")
    assert out[0].rstrip().endswith("M")
    residual = float(out[1].split("=", 1)[1])
    assert residual <= 1e-3


def test_plan_path_nonpositive_delta_exits_1(tmp_path):
    schema_path = tmp_path / "real.json"
    save_schema(SpaceSchema((Real("x", 0.0, 10.0, 0.2),)), schema_path)
    assert run_cli(
        "plan-path", "--schema", str(schema_path), "--from", "0.0", "--to", "1.0",
        "--delta", "0",
    ) == 1


def test_bad_flags_exit_1():
    assert run_cli("explore", "--strategy", "no-such-strategy", "--subject", "sin2") == 1
    assert run_cli("no-such-command") == 1
