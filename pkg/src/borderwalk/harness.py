"""Experiment orchestration: repeated strategy runs, capability/cost metrics,
CSV reports, and Pareto-front renderings.

Capability is pairs found per walk; cost is classifier executions per pair
(infinite when a run finds none, serialized as the literal ``inf`` so the
exclusion stays visible in reports). Wall time uses a monotonic clock and
covers only the walks, not report serialization.
"""

from __future__ import annotations

import hashlib
import math
import time
import zlib
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .bridge import BridgeConfig, spawn
from .classifiers import Executor, make_subject
from .morphisms import Direction, Traversal, all_traversals
from .space import Point, Real, SpaceSchema, random_pool
from .strategies import (
    DIRECTED_WALK,
    RANDOM_TARGET,
    RANDOM_WALK,
    ParetoPair,
    StrategyConfig,
    directed_walk,
    random_target,
    random_walk,
    run_walks,
)

import random


class NoFrontError(ValueError):
    """No pairs were found, so cost is infinite and no time estimate exists."""


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from a tuple of labels (hash-based, platform independent)."""
    digest = hashlib.sha256(repr(parts).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def default_traversal(schema: SpaceSchema) -> Traversal:
    """Upward on the last feature (the classic 2D subjects walk up the y axis)."""
    return Traversal(len(schema.features) - 1, Direction.UP)


@dataclass(frozen=True)
class ExperimentPlan:
    strategy: str
    subject: str | None = None
    bridge: BridgeConfig | None = None
    schema: SpaceSchema | None = None  # required with bridge
    walks: int = 1000
    repetitions: int = 10
    steps: int = 20
    walk_distance: int = 20
    pool_size: int = 300
    seed: int = 0
    sweep: tuple[int, ...] | None = None
    traversal: Traversal | None = None  # directed walk only
    subject_params: tuple[tuple[str, object], ...] = ()
    jobs: int = 1

    def __post_init__(self):
        if (self.subject is None) == (self.bridge is None):
            raise ValueError("exactly one classifier source: subject xor bridge")
        if self.bridge is not None and self.schema is None:
            raise ValueError("bridge plans need a schema")
        if self.walks < 1 or self.repetitions < 1:
            raise ValueError("walks and repetitions must be >= 1")

    @property
    def plan_id(self) -> str:
        return f"{self.subject or 'bridge'}-{self.strategy}"


@dataclass(frozen=True)
class RepetitionResult:
    walks: int
    repetition: int
    executions: int
    pairs: int
    wall_time_s: float
    executor_delta: int
    pair_list: tuple[ParetoPair, ...] = ()
    pool: tuple[Point, ...] = ()

    @property
    def capability(self) -> float:
        return self.pairs / self.walks

    @property
    def cost(self) -> float:
        return self.executions / self.pairs if self.pairs else math.inf


@dataclass(frozen=True)
class ExplorationReport:
    plan_id: str
    strategy: str
    seed: int
    rows: tuple[RepetitionResult, ...]

    def walks_values(self) -> tuple[int, ...]:
        seen: list[int] = []
        for r in self.rows:
            if r.walks not in seen:
                seen.append(r.walks)
        return tuple(seen)

    def rows_for(self, walks: int) -> tuple[RepetitionResult, ...]:
        return tuple(r for r in self.rows if r.walks == walks)

    def aggregate(self, walks: int) -> dict:
        rows = self.rows_for(walks)
        total_exec = sum(r.executions for r in rows)
        total_pairs = sum(r.pairs for r in rows)
        return {
            "walks": walks,
            "mean_executions": total_exec / len(rows),
            "mean_pairs": total_pairs / len(rows),
            "capability": total_pairs / (walks * len(rows)),
            "cost": total_exec / total_pairs if total_pairs else math.inf,
            "mean_wall_time_s": sum(r.wall_time_s for r in rows) / len(rows),
        }


def strategy_fn(plan: ExperimentPlan, schema: SpaceSchema):
    if plan.strategy == RANDOM_TARGET:
        return random_target
    if plan.strategy == DIRECTED_WALK:
        t = plan.traversal or default_traversal(schema)
        return lambda cfg, e, w: directed_walk(cfg, t, e, w)
    if plan.strategy == RANDOM_WALK:
        ts = all_traversals(schema)
        return lambda cfg, e, w: random_walk(cfg, ts, e, w)
    raise ValueError(f"unknown strategy {plan.strategy!r}")


def make_executor(plan: ExperimentPlan) -> Executor:
    if plan.subject is not None:
        return make_subject(plan.subject, **dict(plan.subject_params))
    return spawn(plan.bridge, plan.schema)


def run_experiment(plan: ExperimentPlan, executor: Executor | None = None) -> ExplorationReport:
    """Run R repetitions of W walks for each W in the sweep (or the single
    plan W), with all seeds derived from the plan seed. Deterministic data for
    a fixed plan."""
    e = executor if executor is not None else make_executor(plan)
    schema = e.schema
    fn = strategy_fn(plan, schema)
    rows: list[RepetitionResult] = []
    for walks in plan.sweep or (plan.walks,):
        for rep in range(plan.repetitions):
            pool_rng = random.Random(derive_seed(plan.seed, "pool", walks, rep))
            pool = random_pool(schema, plan.pool_size, pool_rng)
            cfg = StrategyConfig(
                pool=pool,
                steps=plan.steps,
                walk_distance=plan.walk_distance,
                seed=derive_seed(plan.seed, "walks", walks, rep),
            )
            before = e.executions
            t0 = time.perf_counter()
            outcomes = run_walks(fn, cfg, e, walks, jobs=plan.jobs)
            wall = time.perf_counter() - t0
            delta = e.executions - before
            pair_list = tuple(o.pair for o in outcomes if o.pair is not None)
            rows.append(
                RepetitionResult(
                    walks=walks,
                    repetition=rep,
                    executions=sum(o.executions_used for o in outcomes),
                    pairs=len(pair_list),
                    wall_time_s=wall,
                    executor_delta=delta,
                    pair_list=pair_list,
                    pool=pool,
                )
            )
    return ExplorationReport(plan.plan_id, plan.strategy, plan.seed, tuple(rows))


def estimate_time(report: ExplorationReport, s: float) -> float:
    """Projected wall time W * capability * cost * s, i.e. expected executions
    times the per-classification cost."""
    values = report.walks_values()
    if len(values) != 1:
        raise ValueError("time estimate needs a single-W report, not a sweep")
    agg = report.aggregate(values[0])
    if not math.isfinite(agg["cost"]):
        raise NoFrontError("no pairs were found; cost is infinite")
    return values[0] * agg["capability"] * agg["cost"] * s


# --- CSV report ----------------------------------------------------------------

CSV_HEADER = "kind,walks,repetition,executions,pairs,capability,cost,wall_time_s"


def report_csv_text(report: ExplorationReport) -> str:
    lines = [CSV_HEADER]
    for r in report.rows:
        lines.append(
            f"rep,{r.walks},{r.repetition},{r.executions},{r.pairs},"
            f"{r.capability!r},{r.cost!r},{r.wall_time_s!r}"
        )
    for walks in report.walks_values():
        a = report.aggregate(walks)
        lines.append(
            f"mean,{walks},,{a['mean_executions']!r},{a['mean_pairs']!r},"
            f"{a['capability']!r},{a['cost']!r},{a['mean_wall_time_s']!r}"
        )
    return "\n".join(lines) + "\n"


def export_csv(report: ExplorationReport, path: str | Path) -> None:
    Path(path).write_text(report_csv_text(report), encoding="utf-8")


# --- front rendering -------------------------------------------------------------


def label_color(label: str) -> str:
    palette = (
        "tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple",
        "tab:brown", "tab:pink", "tab:olive", "tab:cyan", "tab:gray",
    )
    return palette[zlib.crc32(label.encode("utf-8")) % len(palette)]


def render_front_svg(
    schema: SpaceSchema,
    seeds: tuple[Point, ...],
    pairs: tuple[ParetoPair, ...],
    path: str | Path,
) -> None:
    """Scatter the seed pool in light gray and each pair's two points in their
    label colors, axes pinned to the domain bounds. Needs a 2-real-feature
    schema."""
    feats = schema.features
    if len(feats) != 2 or not all(isinstance(f, Real) for f in feats):
        raise ValueError("rendering needs a schema with exactly 2 real features")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4.5))
    if seeds:
        ax.scatter(
            [float(p[0]) for p in seeds],
            [float(p[1]) for p in seeds],
            s=8, color="0.85", linewidths=0, label="seeds",
        )
    by_label: dict[str, list[tuple[float, float]]] = {}
    for pair in pairs:
        for lp in (pair.a, pair.b):
            by_label.setdefault(lp.label, []).append((float(lp.point[0]), float(lp.point[1])))
    for label in sorted(by_label):
        pts = by_label[label]
        ax.scatter(
            [p[0] for p in pts], [p[1] for p in pts],
            s=10, color=label_color(label), linewidths=0, label=label,
        )
    ax.set_xlim(feats[0].lo, feats[0].hi)
    ax.set_ylim(feats[1].lo, feats[1].hi)
    ax.set_xlabel(feats[0].name)
    ax.set_ylabel(feats[1].name)
    if by_label or seeds:
        ax.legend(loc="upper right", fontsize=8)
    fig.savefig(path, format="svg")
    plt.close(fig)


def run_dir(base: str | Path, plan_id: str, run_id: str | None = None) -> Path:
    """Results layout: <base>/runs/<plan-id>/<timestamp>/"""
    stamp = run_id or datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    d = Path(base) / "runs" / plan_id / stamp
    d.mkdir(parents=True, exist_ok=True)
    return d
