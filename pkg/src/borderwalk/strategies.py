"""The three exploration strategies: random target, directed walk, random walk.

Each strategy performs one walk per call and reports a WalkOutcome with exact
execution accounting (NotFound outcomes still report their executions so
capability and cost denominators stay honest). Multi-walk runs derive one RNG
per walk from ``seed ^ walk_index``, so walks are independent and a run can be
parallelized without shared state beyond the executor's atomic counter.

Refinement runs exactly ``steps`` midpoint iterations with no early exit,
mirroring the literal algorithms; on pure-real schemas that halves the bracket
exactly each iteration, so a Found pair's gap is at most the entry bracket
over 2^steps.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .classifiers import Executor, LabeledPoint
from .morphisms import Traversal, midpoint_unchecked, traverse_unchecked
from .space import Point, distance, encode_point

RANDOM_TARGET = "random-target"
DIRECTED_WALK = "directed-walk"
RANDOM_WALK = "random-walk"
STRATEGY_NAMES = (RANDOM_TARGET, DIRECTED_WALK, RANDOM_WALK)


class StrategyError(ValueError):
    pass


@dataclass(frozen=True)
class StrategyConfig:
    pool: tuple[Point, ...]
    steps: int = 20
    walk_distance: int = 20
    seed: int = 0

    def __post_init__(self):
        if not self.pool:
            raise StrategyError("seed pool is empty")
        if self.steps < 0:
            raise StrategyError("steps must be >= 0")
        if self.walk_distance < 1:
            raise StrategyError("walk_distance must be >= 1")


@dataclass(frozen=True)
class Provenance:
    strategy: str
    walk_index: int
    seed: int


@dataclass(frozen=True)
class ParetoPair:
    a: LabeledPoint
    b: LabeledPoint
    gap: float
    provenance: Provenance


@dataclass(frozen=True)
class WalkOutcome:
    pair: ParetoPair | None
    executions_used: int
    walk_index: int = 0

    @property
    def found(self) -> bool:
        return self.pair is not None


def _make_pair(e: Executor, a: LabeledPoint, b: LabeledPoint, prov: Provenance) -> ParetoPair:
    if a.label == b.label:
        raise StrategyError(f"labels must differ, both are {a.label!r}")
    return ParetoPair(a, b, distance(e.schema, a.point, b.point), prov)


def _walk_rng(cfg: StrategyConfig, walk_index: int) -> random.Random:
    return random.Random(cfg.seed ^ walk_index)


def refine(
    x: LabeledPoint,
    y: LabeledPoint,
    steps: int,
    e: Executor,
    provenance: Provenance | None = None,
) -> ParetoPair:
    """Bisect between two differently-labeled points for exactly ``steps``
    iterations (one execution each) and return the final pair."""
    if x.label == y.label:
        raise StrategyError(f"refine needs differing labels, both are {x.label!r}")
    for _ in range(steps):
        z = midpoint_unchecked(e.schema, x.point, y.point)
        lz = e.classify(z)
        if x.label != lz:
            y = LabeledPoint(z, lz)
        else:
            x = LabeledPoint(z, lz)
    prov = provenance or Provenance("refine", 0, 0)
    return _make_pair(e, x, y, prov)


def random_target(cfg: StrategyConfig, e: Executor, walk_index: int = 0) -> WalkOutcome:
    """Draw two distinct pool points; if their labels differ, refine the pair."""
    size = len(cfg.pool)
    if size < 2:
        raise StrategyError("random target needs a pool of at least 2 points")
    rng = _walk_rng(cfg, walk_index)
    i = rng.randrange(size)
    j = rng.randrange(size - 1)
    if j >= i:
        j += 1
    x = e.label_point(cfg.pool[i])
    y = e.label_point(cfg.pool[j])
    if x.label == y.label:
        return WalkOutcome(None, 2, walk_index)
    prov = Provenance(RANDOM_TARGET, walk_index, cfg.seed)
    return WalkOutcome(refine(x, y, cfg.steps, e, prov), 2 + cfg.steps, walk_index)


def _walk(
    cfg: StrategyConfig,
    e: Executor,
    walk_index: int,
    strategy: str,
    pick_traversal,
) -> WalkOutcome:
    rng = _walk_rng(cfg, walk_index)
    cur = e.label_point(cfg.pool[rng.randrange(len(cfg.pool))])
    used = 1
    for _ in range(cfg.walk_distance):
        t = pick_traversal(rng)
        nxt_point = traverse_unchecked(e.schema, t, cur.point)
        if nxt_point == cur.point:
            # Saturated at a domain edge: the walk is stationary, stop.
            return WalkOutcome(None, used, walk_index)
        nxt = e.label_point(nxt_point)
        used += 1
        if nxt.label != cur.label:
            prov = Provenance(strategy, walk_index, cfg.seed)
            pair = refine(cur, nxt, cfg.steps, e, prov)
            return WalkOutcome(pair, used + cfg.steps, walk_index)
        cur = nxt
    return WalkOutcome(None, used, walk_index)


def directed_walk(
    cfg: StrategyConfig, t: Traversal, e: Executor, walk_index: int = 0
) -> WalkOutcome:
    """Walk one direction from a random pool point until the label changes,
    then refine the bracketing pair."""
    return _walk(cfg, e, walk_index, DIRECTED_WALK, lambda rng: t)


def random_walk(
    cfg: StrategyConfig, ts: tuple[Traversal, ...], e: Executor, walk_index: int = 0
) -> WalkOutcome:
    """Like the directed walk but each step draws its traversal uniformly.

    A singleton traversal list consumes no extra randomness, so it is
    outcome-identical to the directed walk under the same seed.
    """
    if not ts:
        raise StrategyError("random walk needs at least one traversal")
    if len(ts) == 1:
        return _walk(cfg, e, walk_index, RANDOM_WALK, lambda rng: ts[0])
    return _walk(cfg, e, walk_index, RANDOM_WALK, lambda rng: ts[rng.randrange(len(ts))])


def run_walks(
    strategy_fn,
    cfg: StrategyConfig,
    e: Executor,
    walks: int,
    jobs: int = 1,
) -> list[WalkOutcome]:
    """Run ``walks`` independent walks of strategy_fn(cfg, e, walk_index).

    With jobs > 1 walks run on a thread pool; outcomes come back ordered by
    walk index either way, so results are independent of jobs.
    """
    if jobs <= 1 or walks <= 1:
        return [strategy_fn(cfg, e, w) for w in range(walks)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda w: strategy_fn(cfg, e, w), range(walks)))


def walk_record(outcome: WalkOutcome) -> dict:
    """The stable newline-delimited record shape for one walk."""
    rec: dict = {
        "walk": outcome.walk_index,
        "found": outcome.found,
        "executions": outcome.executions_used,
    }
    if outcome.pair is not None:
        p = outcome.pair
        rec.update(
            {
                "a": encode_point(p.a.point),
                "a_label": p.a.label,
                "b": encode_point(p.b.point),
                "b_label": p.b.label,
                "gap": p.gap,
                "strategy": p.provenance.strategy,
                "seed": p.provenance.seed,
            }
        )
    return rec


def write_walk_records(outcomes, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for o in outcomes:
            fh.write(json.dumps(walk_record(o), separators=(",", ":")) + "\n")
