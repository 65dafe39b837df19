import xml.etree.ElementTree as ET

import pytest

from borderwalk import (
    ExperimentPlan,
    ExplorationReport,
    NoFrontError,
    RepetitionResult,
    constant_executor,
    estimate_time,
    export_csv,
    render_front_svg,
    run_dir,
    run_experiment,
    subject_schema,
)
from borderwalk.harness import report_csv_text


def small_plan(**kw):
    base = dict(
        strategy="random-target",
        subject="sin2",
        walks=200,
        repetitions=3,
        steps=20,
        walk_distance=20,
        pool_size=100,
        seed=11,
    )
    base.update(kw)
    return ExperimentPlan(**base)


def data_fields(report):
    return [(r.walks, r.repetition, r.executions, r.pairs) for r in report.rows]


def test_plan_requires_one_source():
    with pytest.raises(ValueError):
        ExperimentPlan(strategy="random-target")
    with pytest.raises(ValueError):
        small_plan(bridge="x")  # both subject and bridge


def test_run_experiment_deterministic():
    a = run_experiment(small_plan())
    b = run_experiment(small_plan())
    assert data_fields(a) == data_fields(b)


def test_capability_and_cost_identities():
    report = run_experiment(small_plan())
    for r in report.rows:
        assert round(r.capability * r.walks) == r.pairs
        if r.pairs:
            assert r.cost * r.pairs == pytest.approx(r.executions, rel=1e-12)
        assert r.executor_delta == r.executions


def test_sweep_rows_and_aggregates():
    report = run_experiment(small_plan(sweep=(100, 200), repetitions=3))
    assert len(report.rows) == 6
    assert report.walks_values() == (100, 200)
    text = report_csv_text(report)
    lines = text.strip().splitlines()
    assert lines[0].startswith("kind,walks,repetition")
    assert sum(1 for l in lines if l.startswith("rep,")) == 6
    assert sum(1 for l in lines if l.startswith("mean,")) == 2


def test_sweep_executions_increase_with_walks():
    report = run_experiment(small_plan(sweep=(100, 200, 400), repetitions=2))
    means = [report.aggregate(w)["mean_executions"] for w in report.walks_values()]
    assert means == sorted(means)
    assert means[0] < means[1] < means[2]


def test_csv_shape_for_full_sweep():
    # 6 sweep values x 10 repetitions: 60 data rows plus 6 aggregate rows
    sweep = (200, 400, 600, 800, 1000, 1200)
    rows = tuple(
        RepetitionResult(
            walks=w, repetition=r, executions=12 * w + r, pairs=w // 2 - r,
            wall_time_s=0.01 * r, executor_delta=12 * w + r,
        )
        for w in sweep
        for r in range(10)
    )
    report = ExplorationReport("sin2-random-target", "random-target", 0, rows)
    lines = report_csv_text(report).strip().splitlines()
    assert len(lines) == 1 + 60 + 6
    assert sum(1 for l in lines if l.startswith("rep,")) == 60
    assert sum(1 for l in lines if l.startswith("mean,")) == 6


def test_csv_reexport_identical(tmp_path):
    report = run_experiment(small_plan())
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    export_csv(report, p1)
    export_csv(report, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_csv_infinite_cost_sentinel(tmp_path):
    plan = small_plan(repetitions=2)
    report = run_experiment(plan, executor=constant_executor(subject_schema()))
    text = report_csv_text(report)
    assert ",inf," in text
    assert all(r.pairs == 0 for r in report.rows)


def test_estimate_time_product():
    row = RepetitionResult(
        walks=1000, repetition=0, executions=11000, pairs=500, wall_time_s=0.5, executor_delta=11000
    )
    report = ExplorationReport("sin2-random-target", "random-target", 0, (row,))
    assert estimate_time(report, 1e-4) == pytest.approx(1.1)


def test_estimate_time_errors():
    empty = RepetitionResult(
        walks=1000, repetition=0, executions=2000, pairs=0, wall_time_s=0.1, executor_delta=2000
    )
    report = ExplorationReport("x", "random-target", 0, (empty,))
    with pytest.raises(NoFrontError):
        estimate_time(report, 1e-4)
    sweep_rows = (
        RepetitionResult(100, 0, 1000, 50, 0.1, 1000),
        RepetitionResult(200, 0, 2000, 100, 0.2, 2000),
    )
    with pytest.raises(ValueError):
        estimate_time(ExplorationReport("x", "random-target", 0, sweep_rows), 1e-4)


def test_estimate_tracks_wall_time_across_subjects():
    # calibrate the effective per-execution cost on one subject, then the
    # W*C*E*s estimate must land within 2x of the measured wall elsewhere
    calib = run_experiment(small_plan(walks=600, repetitions=1))
    s_eff = calib.rows[0].wall_time_s / calib.rows[0].executions
    for subject in ("box2", "circle2", "triangle1"):
        report = run_experiment(small_plan(subject=subject, walks=600, repetitions=1))
        est = estimate_time(report, s_eff)
        wall = report.rows[0].wall_time_s
        assert wall / 2 <= est <= wall * 2


def test_render_svg_well_formed(tmp_path):
    plan = small_plan(walks=150, repetitions=1)
    report = run_experiment(plan)
    row = report.rows[0]
    path = tmp_path / "front.svg"
    render_front_svg(subject_schema(), row.pool, row.pair_list, path)
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")


def test_render_empty_front_is_valid_svg(tmp_path):
    path = tmp_path / "empty.svg"
    render_front_svg(subject_schema(), (), (), path)
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")


def test_render_rejects_non_2d():
    from util import hybrid_schema

    with pytest.raises(ValueError):
        render_front_svg(hybrid_schema(), (), (), "unused.svg")


def test_pairs_coincide_at_pixel_scale():
    # an 8-inch-wide axis over [0, 2*pi] at 100 dpi: a refined pair's gap maps
    # to far less than one pixel, so each pair draws as a single dot
    schema = subject_schema()
    span = schema.features[0].hi - schema.features[0].lo
    pixels_per_unit = 8 * 100 / span
    assert (0.2 / 2**20) * pixels_per_unit < 1


def test_run_dir_layout(tmp_path):
    d = run_dir(tmp_path, "sin2-random-target", "run7")
    assert d == tmp_path / "runs" / "sin2-random-target" / "run7"
    assert d.is_dir()
    stamped = run_dir(tmp_path, "sin2-random-target")
    assert stamped.parent == tmp_path / "runs" / "sin2-random-target"
