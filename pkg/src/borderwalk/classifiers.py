"""Classifier executors and the built-in 2D subject suite.

An executor wraps a total labeling function over a schema and counts every
execution. Executors never cache: the cost metric downstream counts classifier
executions, and caching would silently distort it.

The ten subjects all live on [0, 2*pi] x [-1, 1] with traversal step 0.2 and
have analytically known geometry, so tests can check results against closed
forms instead of against any particular trained model.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass

from .space import Point, Real, SpaceSchema, require_valid

Label = str

SERIAL = "serial"
CONCURRENT = "concurrent"

TWO_PI = 2 * math.pi


class UnknownSubjectError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledPoint:
    point: Point
    label: Label


class Executor:
    """Counting wrapper around a deterministic classify function."""

    def __init__(self, fn, schema: SpaceSchema, thread_safety: str = CONCURRENT, name: str = ""):
        self._fn = fn
        self.schema = schema
        self.thread_safety = thread_safety
        self.name = name
        self._lock = threading.Lock()
        self._executions = 0

    @property
    def executions(self) -> int:
        return self._executions

    def classify(self, p: Point) -> Label:
        require_valid(self.schema, p)  # rejected points are not counted
        label = self._run(p)
        with self._lock:
            self._executions += 1
        return label

    def _run(self, p: Point) -> Label:
        return self._fn(p)

    def label_point(self, p: Point) -> LabeledPoint:
        return LabeledPoint(p, self.classify(p))


def constant_executor(schema: SpaceSchema, label: Label = "only") -> Executor:
    """A classifier with a single class: no border exists anywhere."""
    return Executor(lambda p: label, schema, name="constant")


# --- built-in subjects --------------------------------------------------------

SUBJECT_NAMES = (
    "box1",
    "box2",
    "circle1",
    "circle2",
    "line1",
    "line2",
    "triangle1",
    "triangle2",
    "sin1",
    "sin2",
)


def subject_schema() -> SpaceSchema:
    return SpaceSchema(
        (Real("x", 0.0, TWO_PI, 0.2), Real("y", -1.0, 1.0, 0.2))
    )


def _tri_contains(x, y, v0, v1, v2) -> bool:
    # Sign-of-cross-product test; boundary counts as inside.
    def side(px, py, ax, ay, bx, by):
        return (bx - ax) * (py - ay) - (by - ay) * (px - ax)

    d0 = side(x, y, *v0, *v1)
    d1 = side(x, y, *v1, *v2)
    d2 = side(x, y, *v2, *v0)
    has_neg = d0 < 0 or d1 < 0 or d2 < 0
    has_pos = d0 > 0 or d1 > 0 or d2 > 0
    return not (has_neg and has_pos)


_TRI1 = ((math.pi, 0.6), (math.pi - 0.8, -0.4), (math.pi + 0.8, -0.4))
_TRI2A = ((math.pi - 1.2, 0.6), (math.pi - 2.0, -0.4), (math.pi - 0.4, -0.4))
_TRI2B = ((math.pi + 1.2, 0.6), (math.pi + 0.4, -0.4), (math.pi + 2.0, -0.4))

_DEFAULTS = {
    "box1": {"x0": math.pi / 2, "x1": 3 * math.pi / 2, "y0": -0.5, "y1": 0.5},
    "box2": {"split_x": math.pi, "split_y": 0.0},
    "circle1": {"cx": math.pi, "cy": 0.0, "r": 0.7},
    "circle2": {"cx": math.pi, "cy": 0.0, "r_inner": 0.35, "r_outer": 0.7},
    "line1": {"slope": 0.3, "x_ref": math.pi, "offset": 0.0},
    "line2": {"slope": 0.3, "x_ref": math.pi, "half_gap": 0.4},
    "triangle1": {"vertices": _TRI1},
    "triangle2": {"vertices_a": _TRI2A, "vertices_b": _TRI2B},
    "sin1": {},
    "sin2": {"band": 0.3},
}


def _subject_rule(name: str, params: dict):
    """The raw labeling rule (x, y) -> label for a subject."""
    g = dict(_DEFAULTS[name])
    g.update(params)
    if name == "box1":
        x0, x1, y0, y1 = g["x0"], g["x1"], g["y0"], g["y1"]

        def rule(x, y):
            return "inside" if x0 <= x <= x1 and y0 <= y <= y1 else "outside"

    elif name == "box2":
        sx, sy = g["split_x"], g["split_y"]

        def rule(x, y):
            return "dark" if (x >= sx) == (y >= sy) else "light"

    elif name == "circle1":
        cx, cy, r2 = g["cx"], g["cy"], g["r"] ** 2

        def rule(x, y):
            return "inside" if (x - cx) ** 2 + (y - cy) ** 2 <= r2 else "outside"

    elif name == "circle2":
        cx, cy = g["cx"], g["cy"]
        ri2, ro2 = g["r_inner"] ** 2, g["r_outer"] ** 2

        def rule(x, y):
            d2 = (x - cx) ** 2 + (y - cy) ** 2
            if d2 <= ri2:
                return "core"
            return "ring" if d2 <= ro2 else "outside"

    elif name == "line1":
        m, xr, c = g["slope"], g["x_ref"], g["offset"]

        def rule(x, y):
            return "above" if y > m * (x - xr) + c else "below"

    elif name == "line2":
        m, xr, h = g["slope"], g["x_ref"], g["half_gap"]

        def rule(x, y):
            mid = m * (x - xr)
            if y > mid + h:
                return "upper"
            return "lower" if y < mid - h else "middle"

    elif name == "triangle1":
        v = g["vertices"]

        def rule(x, y):
            return "inside" if _tri_contains(x, y, *v) else "outside"

    elif name == "triangle2":
        va, vb = g["vertices_a"], g["vertices_b"]

        def rule(x, y):
            return (
                "inside"
                if _tri_contains(x, y, *va) or _tri_contains(x, y, *vb)
                else "outside"
            )

    elif name == "sin1":

        def rule(x, y):
            return "above" if y > math.sin(x) else "below"

    elif name == "sin2":
        band = g["band"]

        def rule(x, y):
            s = math.sin(x)
            if y > s + band:
                return "blue"
            return "red" if y < s - band else "black"

    else:
        raise UnknownSubjectError(f"unknown subject {name!r}; expected one of {SUBJECT_NAMES}")
    return rule


def make_subject(name: str, **params) -> Executor:
    """Build the executor for a built-in subject; geometry constants can be
    overridden via keyword parameters."""
    if name not in SUBJECT_NAMES:
        raise UnknownSubjectError(f"unknown subject {name!r}; expected one of {SUBJECT_NAMES}")
    rule = _subject_rule(name, params)

    def fn(p: Point) -> Label:
        return rule(float(p[0]), float(p[1]))

    return Executor(fn, subject_schema(), thread_safety=CONCURRENT, name=name)


def class_mass(
    name: str, samples: int, rng: random.Random, **params
) -> dict[Label, float]:
    """Monte Carlo estimate of each class's probability mass under uniform
    sampling of the subject's domain. Bypasses the executor (and its counter):
    this is measurement plumbing, not a test execution."""
    if name not in SUBJECT_NAMES:
        raise UnknownSubjectError(f"unknown subject {name!r}")
    rule = _subject_rule(name, params)
    counts: dict[Label, int] = {}
    for _ in range(samples):
        x = rng.uniform(0.0, TWO_PI)
        y = rng.uniform(-1.0, 1.0)
        label = rule(x, y)
        counts[label] = counts.get(label, 0) + 1
    return {label: c / samples for label, c in sorted(counts.items())}
