"""Typed feature spaces: schemas, point validation, uniform sampling, distances.

A space is an ordered product of feature domains. Four feature kinds exist:
categorical (a finite ordered symbol list), integer, natural (integer >= 0),
and real (a bounded interval with a positive traversal step). Points are plain
tuples with one value per feature.

Real coordinates may be held as exact binary rationals (``fractions.Fraction``)
as well as floats; all comparisons and the real distance block are computed
exactly on the stored values, so repeated halving downstream never accumulates
representation error.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from pathlib import Path

Value = str | int | float | Fraction
Point = tuple[Value, ...]


class SchemaError(ValueError):
    """A feature descriptor or schema violates its construction rules."""


class SamplingError(ValueError):
    """Uniform sampling is impossible (unbounded integer/natural feature)."""


class InvalidPointError(ValueError):
    """A point failed schema validation; carries the verdict."""

    def __init__(self, verdict: "Verdict"):
        super().__init__(str(verdict))
        self.verdict = verdict


class SpaceKind(Enum):
    DISCRETE_NON_NUMERICAL = "discrete-non-numerical"
    DISCRETE_NUMERICAL = "discrete-numerical"
    CONTINUOUS_NUMERICAL = "continuous-numerical"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class Categorical:
    name: str
    values: tuple[str, ...]

    def __post_init__(self):
        if not self.values:
            raise SchemaError(f"{self.name}: categorical value list is empty")
        if len(set(self.values)) != len(self.values):
            raise SchemaError(f"{self.name}: categorical values contain duplicates")


@dataclass(frozen=True)
class Integer:
    name: str
    min: int | None = None
    max: int | None = None

    def __post_init__(self):
        if self.min is not None and self.max is not None and self.min > self.max:
            raise SchemaError(f"{self.name}: min {self.min} > max {self.max}")


@dataclass(frozen=True)
class Natural:
    name: str
    max: int | None = None

    def __post_init__(self):
        if self.max is not None and self.max < 0:
            raise SchemaError(f"{self.name}: max {self.max} is negative")


@dataclass(frozen=True)
class Real:
    name: str
    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise SchemaError(f"{self.name}: requires lo < hi, got [{self.lo}, {self.hi}]")
        if not 0 < self.step <= self.hi - self.lo:
            raise SchemaError(f"{self.name}: step {self.step} not in (0, hi-lo]")

    @cached_property
    def bounds_exact(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.lo), Fraction(self.hi)

    @cached_property
    def step_exact(self) -> Fraction:
        return Fraction(self.step)


Feature = Categorical | Integer | Natural | Real


@dataclass(frozen=True)
class SpaceSchema:
    features: tuple[Feature, ...]

    def __post_init__(self):
        if not self.features:
            raise SchemaError("schema needs at least one feature")
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise SchemaError("feature names are not unique")

    def __len__(self) -> int:
        return len(self.features)

    @property
    def kind(self) -> SpaceKind:
        # Derived, never stored: classification by the kinds present.
        kinds = {type(f) for f in self.features}
        if kinds == {Categorical}:
            return SpaceKind.DISCRETE_NON_NUMERICAL
        if kinds <= {Integer, Natural}:
            return SpaceKind.DISCRETE_NUMERICAL
        if kinds == {Real}:
            return SpaceKind.CONTINUOUS_NUMERICAL
        return SpaceKind.HYBRID

    @property
    def has_real(self) -> bool:
        return any(isinstance(f, Real) for f in self.features)


@dataclass(frozen=True)
class Verdict:
    violations: tuple[tuple[int, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "OK"
        return "; ".join(f"feature {i}: {reason}" for i, reason in self.violations)


def _is_real_number(v) -> bool:
    return isinstance(v, (int, float, Fraction)) and not isinstance(v, bool)


def _is_integer(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def validate_point(schema: SpaceSchema, p: Point) -> Verdict:
    """Check a point against the schema; returns a verdict, never raises."""
    if len(p) != len(schema.features):
        return Verdict(((0, f"expected {len(schema.features)} values, got {len(p)}"),))
    bad = []
    for i, (f, v) in enumerate(zip(schema.features, p)):
        if isinstance(f, Categorical):
            if not isinstance(v, str):
                bad.append((i, f"expected a symbol, got {type(v).__name__}"))
            elif v not in f.values:
                bad.append((i, f"{v!r} is not a member of {f.name}"))
        elif isinstance(f, Integer):
            if not _is_integer(v):
                bad.append((i, f"expected an integer, got {v!r}"))
            elif f.min is not None and v < f.min:
                bad.append((i, f"{v} < min {f.min}"))
            elif f.max is not None and v > f.max:
                bad.append((i, f"{v} > max {f.max}"))
        elif isinstance(f, Natural):
            if not _is_integer(v):
                bad.append((i, f"expected a natural number, got {v!r}"))
            elif v < 0:
                bad.append((i, f"{v} < 0"))
            elif f.max is not None and v > f.max:
                bad.append((i, f"{v} > max {f.max}"))
        else:  # Real
            if type(v) is float or type(v) is int:
                if not (f.lo <= v <= f.hi):
                    bad.append((i, f"{float(v)} outside [{f.lo}, {f.hi}]"))
            elif isinstance(v, Fraction):
                lo, hi = f.bounds_exact
                if not (lo <= v <= hi):
                    bad.append((i, f"{float(v)} outside [{f.lo}, {f.hi}]"))
            elif not _is_real_number(v):
                bad.append((i, f"expected a real value, got {v!r}"))
            elif not (f.lo <= v <= f.hi):
                bad.append((i, f"{float(v)} outside [{f.lo}, {f.hi}]"))
    return Verdict(tuple(bad))


def require_valid(schema: SpaceSchema, p: Point) -> None:
    verdict = validate_point(schema, p)
    if not verdict.ok:
        raise InvalidPointError(verdict)


def distance(schema: SpaceSchema, x: Point, y: Point) -> float:
    """Block distance: Hamming over categoricals + Manhattan over integers
    + Euclidean over the real sub-vector.

    Reduces to the pure per-kind metric on pure schemas. The real block is
    accumulated exactly before the final square root.
    """
    require_valid(schema, x)
    require_valid(schema, y)
    hamming = 0
    manhattan = 0
    sq = Fraction(0)
    for f, a, b in zip(schema.features, x, y):
        if isinstance(f, Categorical):
            if a != b:
                hamming += 1
        elif isinstance(f, Real):
            d = Fraction(a) - Fraction(b)
            if d:
                sq += d * d
        else:
            manhattan += abs(a - b)
    euclid = math.sqrt(sq) if sq else 0.0
    return hamming + manhattan + euclid


def min_separation(schema: SpaceSchema) -> float:
    """Least distance between distinct points: 0 with any real feature, else 1."""
    return 0.0 if schema.has_real else 1.0


def diameter(schema: SpaceSchema) -> float:
    """Largest possible distance between two points of the space.

    Unbounded integer/natural features make it infinite.
    """
    hamming = 0
    manhattan = 0.0
    sq = 0.0
    for f in schema.features:
        if isinstance(f, Categorical):
            if len(f.values) > 1:
                hamming += 1
        elif isinstance(f, Integer):
            if f.min is None or f.max is None:
                return math.inf
            manhattan += f.max - f.min
        elif isinstance(f, Natural):
            if f.max is None:
                return math.inf
            manhattan += f.max
        else:
            sq += (f.hi - f.lo) ** 2
    return hamming + manhattan + math.sqrt(sq)


def random_point(schema: SpaceSchema, rng: random.Random) -> Point:
    """Draw one point, each coordinate uniform and independent over its domain."""
    values: list[Value] = []
    for f in schema.features:
        if isinstance(f, Categorical):
            values.append(f.values[rng.randrange(len(f.values))])
        elif isinstance(f, Integer):
            if f.min is None or f.max is None:
                raise SamplingError(f"feature {f.name}: unbounded integer cannot be sampled")
            values.append(rng.randint(f.min, f.max))
        elif isinstance(f, Natural):
            if f.max is None:
                raise SamplingError(f"feature {f.name}: unbounded natural cannot be sampled")
            values.append(rng.randint(0, f.max))
        else:
            values.append(rng.uniform(f.lo, f.hi))
    return tuple(values)


def random_pool(schema: SpaceSchema, size: int, rng: random.Random) -> tuple[Point, ...]:
    return tuple(random_point(schema, rng) for _ in range(size))


# --- schema file round-trip -------------------------------------------------
#
# {"features": [{"name": ..., "kind": "categorical", "values": [...]},
#               {"name": ..., "kind": "integer", "min": ..., "max": ...},
#               {"name": ..., "kind": "natural", "max": ...},
#               {"name": ..., "kind": "real", "lo": ..., "hi": ..., "step": ...}]}


def schema_to_dict(schema: SpaceSchema) -> dict:
    out = []
    for f in schema.features:
        if isinstance(f, Categorical):
            out.append({"name": f.name, "kind": "categorical", "values": list(f.values)})
        elif isinstance(f, Integer):
            d = {"name": f.name, "kind": "integer"}
            if f.min is not None:
                d["min"] = f.min
            if f.max is not None:
                d["max"] = f.max
            out.append(d)
        elif isinstance(f, Natural):
            d = {"name": f.name, "kind": "natural"}
            if f.max is not None:
                d["max"] = f.max
            out.append(d)
        else:
            out.append({"name": f.name, "kind": "real", "lo": f.lo, "hi": f.hi, "step": f.step})
    return {"features": out}


def schema_from_dict(data: dict) -> SpaceSchema:
    try:
        raw = data["features"]
    except (KeyError, TypeError):
        raise SchemaError("schema document needs a 'features' list") from None
    features: list[Feature] = []
    for entry in raw:
        kind = entry.get("kind")
        name = entry.get("name", f"f{len(features)}")
        if kind == "categorical":
            features.append(Categorical(name, tuple(entry["values"])))
        elif kind == "integer":
            features.append(Integer(name, entry.get("min"), entry.get("max")))
        elif kind == "natural":
            features.append(Natural(name, entry.get("max")))
        elif kind == "real":
            features.append(Real(name, entry["lo"], entry["hi"], entry["step"]))
        else:
            raise SchemaError(f"feature {name}: unknown kind {kind!r}")
    return SpaceSchema(tuple(features))


def save_schema(schema: SpaceSchema, path: str | Path) -> None:
    Path(path).write_text(json.dumps(schema_to_dict(schema), indent=2) + "\n", encoding="utf-8")


def load_schema(path: str | Path) -> SpaceSchema:
    return schema_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def feature_kind_name(f: Feature) -> str:
    """Wire-protocol kind string for a feature."""
    if isinstance(f, Categorical):
        return "categorical"
    if isinstance(f, Integer):
        return "integer"
    if isinstance(f, Natural):
        return "natural"
    return "real"


def encode_value(v: Value):
    """JSON-friendly form of a coordinate: symbols stay strings, reals become
    their nearest double."""
    if isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return float(v)
    return v


def encode_point(p: Point) -> list:
    return [encode_value(v) for v in p]
