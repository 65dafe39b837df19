"""Command-line surface tying schemas, subjects/bridges, strategies, and the
experiment harness together.

Exit codes: 0 success, 1 configuration error, 2 runtime/executor failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import random
import sys
from pathlib import Path

from . import harness
from .bridge import BridgeConfig, BridgeError, BridgeExecutor
from .classifiers import SUBJECT_NAMES, UnknownSubjectError
from .harness import ExperimentPlan, derive_seed, run_dir
from .morphisms import PlanError, Traversal, apply_composition, plan_path
from .space import (
    Categorical,
    InvalidPointError,
    Point,
    Real,
    SamplingError,
    SchemaError,
    SpaceSchema,
    distance,
    load_schema,
    random_pool,
)
from .strategies import STRATEGY_NAMES, StrategyConfig, StrategyError, run_walks, write_walk_records

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2

_CONFIG_ERRORS = (
    SchemaError,
    SamplingError,
    InvalidPointError,
    StrategyError,
    PlanError,
    UnknownSubjectError,
    ValueError,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; the contract reserves 2 for
    # runtime failures, so config problems map to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--subject", help="built-in subject classifier name (experiment also takes 'all')")
    p.add_argument("--bridge", help="command line of an external model server")
    p.add_argument("--schema", help="schema JSON file (required with --bridge)")
    p.add_argument("--steps", type=int, default=20, help="refinement iterations (default 20)")
    p.add_argument("--walk-distance", type=int, default=20, help="max walk steps (default 20)")
    p.add_argument("--pool-size", type=int, default=300, help="seed pool size (default 300)")
    p.add_argument("--seed", type=int, default=None, help="base seed (default $PARETO_SEED or 0)")
    p.add_argument("--jobs", type=int, default=1, help="walk parallelism cap (default 1)")
    p.add_argument("--out", default="out", help="output directory (default ./out)")
    p.add_argument(
        "--subject-param",
        action="append",
        default=[],
        metavar="K=V",
        help="override a subject geometry constant (repeatable)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="borderwalk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_explore = sub.add_parser("explore", parents=[], help="run one strategy for W walks")
    _add_common(p_explore)
    p_explore.add_argument("--strategy", choices=STRATEGY_NAMES, required=True)
    p_explore.add_argument("--walks", type=int, default=1000)
    p_explore.add_argument(
        "--traversal", default=None, help="directed-walk direction, e.g. U1 (default: up on the last feature)"
    )

    p_exp = sub.add_parser("experiment", help="run a repetition/sweep grid and write CSV reports")
    _add_common(p_exp)
    p_exp.add_argument("--strategy", default="all", help="strategy name or 'all'")
    p_exp.add_argument("--walks", type=int, default=1000)
    p_exp.add_argument("--sweep", default=None, help="walk sweep LO:HI:STEP, e.g. 200:1200:200")
    p_exp.add_argument("--repetitions", type=int, default=10)
    p_exp.add_argument("--render", action="store_true", help="also write front.svg for 2D schemas")
    p_exp.add_argument("--run-id", default=None, help="results subdirectory name (default: timestamp)")
    p_exp.add_argument(
        "--traversal", default=None, help="directed-walk direction, e.g. U1"
    )

    p_plan = sub.add_parser("plan-path", help="print the composition moving one point onto another")
    p_plan.add_argument("--schema", required=True)
    p_plan.add_argument("--from", dest="src", required=True, help="start point, comma-separated values")
    p_plan.add_argument("--to", dest="dst", required=True, help="target point, comma-separated values")
    p_plan.add_argument("--delta", type=float, default=1e-6, help="tolerance for real features")
    return parser


def _seed_of(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("PARETO_SEED", "0"))


def _subject_params(args) -> tuple[tuple[str, object], ...]:
    out = []
    for item in args.subject_param:
        if "=" not in item:
            raise ValueError(f"--subject-param wants K=V, got {item!r}")
        k, v = item.split("=", 1)
        try:
            value: object = int(v)
        except ValueError:
            try:
                value = float(v)
            except ValueError:
                value = v
        out.append((k, value))
    return tuple(out)


def _source_of(args) -> tuple[str | None, BridgeConfig | None, SpaceSchema | None]:
    if (args.subject is None) == (args.bridge is None):
        raise ValueError("exactly one of --subject and --bridge is required")
    if args.bridge is not None:
        if not args.schema:
            raise ValueError("--bridge requires --schema")
        return None, BridgeConfig(args.bridge), load_schema(args.schema)
    if args.schema:
        raise ValueError("--schema only applies with --bridge (subjects carry their own)")
    return args.subject, None, None


def _traversal_of(args, schema: SpaceSchema) -> Traversal | None:
    if args.traversal is None:
        return None
    tok = args.traversal.strip()
    if not tok or tok[0] not in "UD" or not tok[1:].isdigit():
        raise ValueError(f"--traversal wants U<i> or D<i>, got {args.traversal!r}")
    from .morphisms import Direction

    t = Traversal(int(tok[1:]), Direction.UP if tok[0] == "U" else Direction.DOWN)
    if t.feature_index >= len(schema.features):
        raise ValueError(f"traversal feature {t.feature_index} out of range for K={len(schema.features)}")
    return t


def _parse_point(schema: SpaceSchema, text: str) -> Point:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != len(schema.features):
        raise ValueError(f"point needs {len(schema.features)} values, got {len(parts)}")
    values: list = []
    for f, raw in zip(schema.features, parts):
        if isinstance(f, Categorical):
            values.append(raw)
        elif isinstance(f, Real):
            values.append(float(raw))
        else:
            values.append(int(raw))
    return tuple(values)


def _close(executor) -> None:
    if isinstance(executor, BridgeExecutor):
        executor.shutdown()


def cmd_explore(args) -> int:
    subject, bridge_cfg, schema = _source_of(args)
    seed = _seed_of(args)
    plan = ExperimentPlan(
        strategy=args.strategy,
        subject=subject,
        bridge=bridge_cfg,
        schema=schema,
        walks=args.walks,
        repetitions=1,
        steps=args.steps,
        walk_distance=args.walk_distance,
        pool_size=args.pool_size,
        seed=seed,
        subject_params=_subject_params(args),
        jobs=args.jobs,
    )
    executor = harness.make_executor(plan)
    try:
        schema = executor.schema
        plan = dataclasses.replace(plan, traversal=_traversal_of(args, schema))
        fn = harness.strategy_fn(plan, schema)
        pool = random_pool(schema, plan.pool_size, random.Random(derive_seed(seed, "pool", plan.walks, 0)))
        cfg = StrategyConfig(
            pool=pool,
            steps=plan.steps,
            walk_distance=plan.walk_distance,
            seed=derive_seed(seed, "walks", plan.walks, 0),
        )
        outcomes = run_walks(fn, cfg, executor, plan.walks, jobs=plan.jobs)
    finally:
        _close(executor)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    pairs_path = out / "pairs.jsonl"
    write_walk_records(outcomes, pairs_path)
    pairs = sum(1 for o in outcomes if o.found)
    executions = sum(o.executions_used for o in outcomes)
    capability = pairs / plan.walks
    cost = executions / pairs if pairs else math.inf
    print(f"pairs={pairs} executions={executions} capability={capability!r} cost={cost!r}")
    print(f"wrote {pairs_path}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.subject == "all":
        if args.bridge is not None:
            raise ValueError("--subject all cannot be combined with --bridge")
        subjects: list[str | None] = list(SUBJECT_NAMES)
        bridge_cfg, schema = None, None
    else:
        subject, bridge_cfg, schema = _source_of(args)
        subjects = [subject]
    seed = _seed_of(args)
    sweep = None
    if args.sweep:
        lo, hi, step = (int(v) for v in args.sweep.split(":"))
        sweep = tuple(range(lo, hi + 1, step))
        if not sweep:
            raise ValueError(f"empty sweep {args.sweep!r}")
    if args.strategy != "all" and args.strategy not in STRATEGY_NAMES:
        raise ValueError(f"unknown strategy {args.strategy!r}")
    strategies = list(STRATEGY_NAMES) if args.strategy == "all" else [args.strategy]

    for subj in subjects:
        for strat in strategies:
            plan = ExperimentPlan(
                strategy=strat,
                subject=None if subj is None else subj,
                bridge=bridge_cfg,
                schema=schema,
                walks=args.walks,
                repetitions=args.repetitions,
                steps=args.steps,
                walk_distance=args.walk_distance,
                pool_size=args.pool_size,
                seed=seed,
                sweep=sweep,
                subject_params=_subject_params(args) if subj else (),
                jobs=args.jobs,
            )
            executor = harness.make_executor(plan)
            try:
                if plan.strategy == "directed-walk":
                    t = _traversal_of(args, executor.schema)
                    if t is not None:
                        plan = dataclasses.replace(plan, traversal=t)
                report = harness.run_experiment(plan, executor)
            finally:
                _close(executor)
            outdir = run_dir(args.out, plan.plan_id, args.run_id)
            csv_path = outdir / "report.csv"
            harness.export_csv(report, csv_path)
            print(f"wrote {csv_path}")
            if args.render:
                feats = executor.schema.features
                if len(feats) == 2 and all(isinstance(f, Real) for f in feats):
                    last = report.rows[-1]
                    svg_path = outdir / "front.svg"
                    harness.render_front_svg(executor.schema, last.pool, last.pair_list, svg_path)
                    print(f"wrote {svg_path}")
                else:
                    print("warning: --render needs a 2D real schema; skipped", file=sys.stderr)
    return EXIT_OK


def cmd_plan_path(args) -> int:
    schema = load_schema(args.schema)
    a = _parse_point(schema, args.src)
    b = _parse_point(schema, args.dst)
    comp = plan_path(schema, a, b, args.delta)
    endpoint = apply_composition(schema, comp, a)
    residual = distance(schema, endpoint, b)
    print(comp.text())
    print(f"residual={residual!r}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "explore":
            return cmd_explore(args)
        if args.command == "experiment":
            return cmd_experiment(args)
        return cmd_plan_path(args)
    except BridgeError as err:
        print(f"borderwalk: executor failure: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    except _CONFIG_ERRORS as err:
        print(f"borderwalk: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"borderwalk: {err}", file=sys.stderr)
        return EXIT_RUNTIME


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
