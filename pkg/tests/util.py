"""Shared schema builders and small oracles for the test suite."""

from __future__ import annotations

import random

from borderwalk import (
    Categorical,
    Integer,
    Natural,
    Real,
    SpaceSchema,
)

ABC = ("a", "b", "c")


def cat_schema(k: int = 3, values: tuple[str, ...] = ABC) -> SpaceSchema:
    return SpaceSchema(tuple(Categorical(f"c{i}", values) for i in range(k)))


def int_schema(k: int = 2, lo: int = -10, hi: int = 10) -> SpaceSchema:
    return SpaceSchema(tuple(Integer(f"i{i}", lo, hi) for i in range(k)))


def nat_schema(k: int = 2, hi: int = 12) -> SpaceSchema:
    return SpaceSchema(tuple(Natural(f"n{i}", hi) for i in range(k)))


def real_schema(k: int = 2, lo: float = -2.0, hi: float = 2.0, step: float = 0.25) -> SpaceSchema:
    return SpaceSchema(tuple(Real(f"r{i}", lo, hi, step) for i in range(k)))


def hybrid_schema(with_real: bool = True) -> SpaceSchema:
    feats = [
        Categorical("color", ("red", "green", "blue", "gray")),
        Integer("level", -5, 5),
        Natural("count", 9),
    ]
    if with_real:
        feats.append(Real("ratio", 0.0, 1.0, 0.1))
        feats.append(Real("shift", -1.0, 1.0, 0.2))
    return SpaceSchema(tuple(feats))


SCHEMAS_BY_KIND = {
    "categorical": cat_schema(3, ("a", "b", "c", "d")),
    "integer": int_schema(3),
    "real": real_schema(2),
    "hybrid": hybrid_schema(True),
}


def distinct_pair(schema, rng: random.Random, min_distance: float = 0.0):
    """Two random valid points farther apart than min_distance."""
    from borderwalk import distance, random_point

    while True:
        x = random_point(schema, rng)
        y = random_point(schema, rng)
        if distance(schema, x, y) > min_distance:
            return x, y
