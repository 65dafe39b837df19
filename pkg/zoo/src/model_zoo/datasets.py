"""Bundled synthetic datasets: one pure-continuous, one pure-categorical, and
one hybrid table, each generated deterministically from a fixed seed with an
analytically known labeling rule plus a little label noise.

Schemas use the same JSON feature document the border-discovery client reads,
so a served model's advertised space is directly loadable on the other side
of the wire.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


@dataclass(frozen=True)
class Dataset:
    id: str
    schema: dict
    rows: tuple[tuple, ...]
    labels: tuple[str, ...]

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.labels)))

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(f["name"] for f in self.schema["features"])

    def kind_counts(self) -> dict[str, int]:
        counts = {"categorical": 0, "integer": 0, "natural": 0, "real": 0}
        for f in self.schema["features"]:
            counts[f["kind"]] += 1
        return counts


def validate_row(schema: dict, row: tuple) -> bool:
    feats = schema["features"]
    if len(row) != len(feats):
        return False
    for f, v in zip(feats, row):
        kind = f["kind"]
        if kind == "categorical":
            if v not in f["values"]:
                return False
        elif kind == "real":
            if not isinstance(v, (int, float)) or not f["lo"] <= v <= f["hi"]:
                return False
        else:
            if not isinstance(v, int) or isinstance(v, bool):
                return False
            lo = f.get("min", 0 if kind == "natural" else None)
            hi = f.get("max")
            if lo is not None and v < lo:
                return False
            if hi is not None and v > hi:
                return False
    return True


def _blend(seed: int = 101, rows: int = 1800) -> Dataset:
    """Continuous-only table: grading a drink blend from four measurements."""
    schema = {
        "features": [
            {"name": "acidity", "kind": "real", "lo": 2.0, "hi": 10.0, "step": 0.2},
            {"name": "sugar", "kind": "real", "lo": 0.0, "hi": 15.0, "step": 0.3},
            {"name": "sulphates", "kind": "real", "lo": 0.2, "hi": 2.0, "step": 0.05},
            {"name": "alcohol", "kind": "real", "lo": 8.0, "hi": 15.0, "step": 0.2},
        ]
    }
    rng = random.Random(seed)
    data, labels = [], []
    for _ in range(rows):
        acidity = rng.uniform(2.0, 10.0)
        sugar = rng.uniform(0.0, 15.0)
        sulph = rng.uniform(0.2, 2.0)
        alcohol = rng.uniform(8.0, 15.0)
        score = 0.8 * alcohol - 0.6 * acidity + 1.5 * sulph - 0.1 * (sugar - 6) ** 2 / 6
        if rng.random() < 0.03:
            score += rng.uniform(-4, 4)
        if score > 6.5:
            label = "excellent"
        elif score > 3.0:
            label = "normal"
        else:
            label = "poor"
        data.append((acidity, sugar, sulph, alcohol))
        labels.append(label)
    return Dataset("blend", schema, tuple(data), tuple(labels))


def _fungi(seed: int = 202, rows: int = 2400) -> Dataset:
    """Categorical-only table: edible vs poisonous from six traits."""
    caps = ("bell", "conical", "flat", "knobbed")
    colors = ("brown", "white", "yellow", "red")
    odors = ("none", "almond", "foul", "pungent")
    gills = ("broad", "narrow")
    stalks = ("smooth", "scaly", "fibrous")
    habitats = ("woods", "grass", "urban")
    schema = {
        "features": [
            {"name": "cap", "kind": "categorical", "values": list(caps)},
            {"name": "color", "kind": "categorical", "values": list(colors)},
            {"name": "odor", "kind": "categorical", "values": list(odors)},
            {"name": "gills", "kind": "categorical", "values": list(gills)},
            {"name": "stalk", "kind": "categorical", "values": list(stalks)},
            {"name": "habitat", "kind": "categorical", "values": list(habitats)},
        ]
    }
    rng = random.Random(seed)
    data, labels = [], []
    for _ in range(rows):
        row = (
            rng.choice(caps),
            rng.choice(colors),
            rng.choice(odors),
            rng.choice(gills),
            rng.choice(stalks),
            rng.choice(habitats),
        )
        poisonous = (
            row[2] in ("foul", "pungent")
            or (row[1] == "red" and row[3] == "narrow")
            or (row[0] == "conical" and row[5] == "urban")
        )
        if rng.random() < 0.02:
            poisonous = not poisonous
        data.append(row)
        labels.append("poisonous" if poisonous else "edible")
    return Dataset("fungi", schema, tuple(data), tuple(labels))


def _churn(seed: int = 303, rows: int = 2400) -> Dataset:
    """Hybrid table: subscription churn from plan, region, tenure, support
    load, spend, and usage."""
    plans = ("basic", "plus", "premium")
    regions = ("north", "south", "east", "west")
    schema = {
        "features": [
            {"name": "plan", "kind": "categorical", "values": list(plans)},
            {"name": "region", "kind": "categorical", "values": list(regions)},
            {"name": "tenure_months", "kind": "natural", "max": 120},
            {"name": "support_calls", "kind": "integer", "min": 0, "max": 20},
            {"name": "monthly_spend", "kind": "real", "lo": 10.0, "hi": 200.0, "step": 5.0},
            {"name": "usage_ratio", "kind": "real", "lo": 0.0, "hi": 1.0, "step": 0.05},
        ]
    }
    rng = random.Random(seed)
    data, labels = [], []
    for _ in range(rows):
        plan = rng.choice(plans)
        region = rng.choice(regions)
        tenure = rng.randint(0, 120)
        calls = rng.randint(0, 20)
        spend = rng.uniform(10.0, 200.0)
        usage = rng.uniform(0.0, 1.0)
        score = (
            0.25 * calls
            - 0.04 * tenure
            - 3.5 * usage
            + 0.012 * spend
            + (1.2 if plan == "basic" else -0.4)
            + (0.5 if region == "north" else 0.0)
        )
        churned = score > 0.8
        if rng.random() < 0.03:
            churned = not churned
        data.append((plan, region, tenure, calls, spend, usage))
        labels.append("churned" if churned else "stayed")
    return Dataset("churn", schema, tuple(data), tuple(labels))


_BUILDERS = {"blend": _blend, "fungi": _fungi, "churn": _churn}


def dataset_ids() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def load_dataset(dataset_id: str) -> Dataset:
    try:
        return _BUILDERS[dataset_id]()
    except KeyError:
        raise KeyError(f"unknown dataset {dataset_id!r}; have {dataset_ids()}") from None


def catalog() -> list[dict]:
    """Dataset ids with their schemas and class counts."""
    out = []
    for ds_id in dataset_ids():
        ds = load_dataset(ds_id)
        out.append(
            {
                "id": ds.id,
                "rows": len(ds.rows),
                "classes": list(ds.classes),
                "features": len(ds.schema["features"]),
                "kinds": ds.kind_counts(),
                "schema": ds.schema,
            }
        )
    return out
