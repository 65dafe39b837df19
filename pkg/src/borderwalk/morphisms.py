"""The generated exploratory operator set for a schema: single-feature
traversals, the contracting midpoint, compositions, and a constructive path
planner that reaches any target point exactly (discrete schemas) or within any
positive tolerance (schemas with real features).

Traversals saturate at domain bounds instead of wrapping, so every generated
point stays inside the space. Real arithmetic is exact (binary rationals), so
midpoint halving is exact and the planner's residual bound is a true
inequality, not an approximate one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .space import (
    Categorical,
    Integer,
    Natural,
    Point,
    Real,
    SpaceSchema,
    distance,
    min_separation,
    require_valid,
)


class PlanError(ValueError):
    """plan_path precondition failure (bad points or non-positive tolerance)."""


class ContractionInapplicableError(ValueError):
    """contraction_check called on a pair at or below the space's minimum separation."""


class Direction(Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class Traversal:
    feature_index: int
    direction: Direction

    def text(self) -> str:
        return f"{'U' if self.direction is Direction.UP else 'D'}{self.feature_index}"


@dataclass(frozen=True)
class MidTowardTarget:
    target: Point


Step = Traversal | MidTowardTarget


@dataclass(frozen=True)
class Composition:
    steps: tuple[Step, ...] = ()

    def text(self) -> str:
        return composition_to_text(self)


def all_traversals(schema: SpaceSchema) -> tuple[Traversal, ...]:
    """Both directions for every feature, in feature order (up before down)."""
    out = []
    for i in range(len(schema.features)):
        out.append(Traversal(i, Direction.UP))
        out.append(Traversal(i, Direction.DOWN))
    return tuple(out)


def apply_traversal(schema: SpaceSchema, t: Traversal, x: Point) -> Point:
    """Move one feature a single step up or down, saturating at the domain edge."""
    require_valid(schema, x)
    return traverse_unchecked(schema, t, x)


def traverse_unchecked(schema: SpaceSchema, t: Traversal, x: Point) -> Point:
    """apply_traversal without revalidating x (for callers holding valid points)."""
    if not 0 <= t.feature_index < len(schema.features):
        raise IndexError(f"traversal feature {t.feature_index} out of range")
    i = t.feature_index
    f = schema.features[i]
    v = x[i]
    up = t.direction is Direction.UP
    if isinstance(f, Categorical):
        j = f.values.index(v)
        j = min(j + 1, len(f.values) - 1) if up else max(j - 1, 0)
        nv = f.values[j]
    elif isinstance(f, Integer):
        nv = v + 1 if up else v - 1
        if up and f.max is not None:
            nv = min(nv, f.max)
        if not up and f.min is not None:
            nv = max(nv, f.min)
    elif isinstance(f, Natural):
        if up:
            nv = v + 1 if f.max is None else min(v + 1, f.max)
        else:
            nv = max(v - 1, 0)
    else:  # Real: exact step, saturated against the declared interval
        lo, hi = f.bounds_exact
        if up:
            nv = Fraction(v) + f.step_exact
            if nv > hi:
                nv = hi
        else:
            nv = Fraction(v) - f.step_exact
            if nv < lo:
                nv = lo
    if nv == v:
        return x
    out = list(x)
    out[i] = nv
    return tuple(out)


def midpoint(schema: SpaceSchema, x: Point, y: Point) -> Point:
    """A point strictly between x and y whenever their distance exceeds the
    space's minimum separation.

    Real coordinates take the exact average. Categorical coordinates copy
    equal values; among the differing positions taken left to right, the 1st,
    3rd, ... keep x's value and the 2nd, 4th, ... take y's. Integer/natural
    coordinates take the exact half when the sum is even; odd sums round
    alternately toward x then y (same left-to-right alternation), which keeps
    the contraction property that plain flooring loses when several
    coordinates differ by one.
    """
    require_valid(schema, x)
    require_valid(schema, y)
    return midpoint_unchecked(schema, x, y)


def _half_sum(a, b) -> Fraction:
    # Exact (a+b)/2 over the integer ratios; cheaper than Fraction addition.
    na, da = a.as_integer_ratio()
    nb, db = b.as_integer_ratio()
    if da == db:
        return Fraction(na + nb, 2 * da)
    return Fraction(na * db + nb * da, 2 * da * db)


def midpoint_unchecked(schema: SpaceSchema, x: Point, y: Point) -> Point:
    """midpoint without revalidating the operands."""
    out: list = []
    cat_diff = 0
    int_odd = 0
    for f, a, b in zip(schema.features, x, y):
        if isinstance(f, Categorical):
            if a == b:
                out.append(a)
            else:
                cat_diff += 1
                out.append(a if cat_diff % 2 == 1 else b)
        elif isinstance(f, Real):
            out.append(a if a == b else _half_sum(a, b))
        else:
            if a == b:
                out.append(a)
            elif (a + b) % 2 == 0:
                out.append((a + b) // 2)
            else:
                int_odd += 1
                s = 1 if b > a else -1
                out.append((a + b - s) // 2 if int_odd % 2 == 1 else (a + b + s) // 2)
    return tuple(out)


def contraction_check(schema: SpaceSchema, x: Point, y: Point) -> bool:
    """Whether the midpoint is strictly closer to both endpoints than they are
    to each other. Only defined for pairs farther apart than the minimum
    separation."""
    d = distance(schema, x, y)
    if d <= min_separation(schema):
        raise ContractionInapplicableError(
            f"pair distance {d} does not exceed the minimum separation"
        )
    z = midpoint(schema, x, y)
    return distance(schema, x, z) < d and distance(schema, z, y) < d


def apply_composition(schema: SpaceSchema, comp: Composition, start: Point) -> Point:
    """Fold the steps left to right from the start point."""
    require_valid(schema, start)
    p = start
    for step in comp.steps:
        if isinstance(step, Traversal):
            p = apply_traversal(schema, step, p)
        else:
            p = midpoint(schema, step.target, p)
    return p


def plan_path(schema: SpaceSchema, a: Point, b: Point, delta: float) -> Composition:
    """Build a composition moving a onto b: exact step counts per coordinate
    toward the target, then (when real features exist) repeated midpoints
    toward b until the residual is at most delta.

    The endpoint equals b exactly for schemas without real features; with real
    features it lands within delta (delta must be positive).
    """
    require_valid(schema, a)
    require_valid(schema, b)
    if schema.has_real:
        if not delta > min_separation(schema):
            raise PlanError(f"delta must be positive for real features, got {delta}")
    elif delta < 0:
        raise PlanError(f"delta must be non-negative, got {delta}")

    steps: list[Step] = []
    for i, (f, av, bv) in enumerate(zip(schema.features, a, b)):
        if isinstance(f, Categorical):
            ja, jb = f.values.index(av), f.values.index(bv)
            n, up = abs(jb - ja), jb > ja
        elif isinstance(f, Real):
            gap = abs(Fraction(av) - Fraction(bv))
            n, up = int(gap / Fraction(f.step)), bv > av
        else:
            n, up = abs(bv - av), bv > av
        t = Traversal(i, Direction.UP if up else Direction.DOWN)
        steps.extend([t] * n)

    if schema.has_real:
        # Residual after the traversals is below one step per real coordinate;
        # each midpoint toward b halves it exactly.
        c = math.sqrt(sum(f.step**2 for f in schema.features if isinstance(f, Real)))
        n_mid = max(0, math.ceil(math.log2(c / delta))) if c > delta else 0
        while c / 2**n_mid > delta:  # guard against log2 rounding at integer boundaries
            n_mid += 1
        steps.extend([MidTowardTarget(b)] * n_mid)
    return Composition(tuple(steps))


# --- text form: "U0 U0 D3 M" -------------------------------------------------


def composition_to_text(comp: Composition) -> str:
    return " ".join(s.text() if isinstance(s, Traversal) else "M" for s in comp.steps)


def composition_from_text(text: str, target: Point | None = None) -> Composition:
    """Parse the text form. 'M' steps need the mid-toward target supplied."""
    steps: list[Step] = []
    for tok in text.split():
        if tok == "M":
            if target is None:
                raise ValueError("composition contains 'M' but no target point was given")
            steps.append(MidTowardTarget(target))
        elif tok[0] in "UD" and tok[1:].isdigit():
            steps.append(
                Traversal(int(tok[1:]), Direction.UP if tok[0] == "U" else Direction.DOWN)
            )
        else:
            raise ValueError(f"unrecognized composition token {tok!r}")
    return Composition(tuple(steps))
