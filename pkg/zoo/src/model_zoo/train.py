"""Training for the zoo's model family.

Each model kind wraps the same preprocessing (one-hot categoricals, scaled
numerics) around a scikit-learn estimator. Training writes a self-contained
artifact directory: the fitted pipeline, a manifest with accuracy and 10-fold
cross-validation score, the schema document a server advertises, and the
train-time predictions for every dataset row (the round-trip reference).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import joblib
import numpy as np
import pandas as pd
from sklearn.compose import ColumnTransformer
from sklearn.dummy import DummyClassifier
from sklearn.ensemble import StackingClassifier, VotingClassifier
from sklearn.linear_model import LogisticRegression
from sklearn.model_selection import cross_val_score, train_test_split
from sklearn.naive_bayes import GaussianNB
from sklearn.neighbors import KNeighborsClassifier
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import OneHotEncoder, StandardScaler
from sklearn.svm import SVC
from sklearn.tree import DecisionTreeClassifier

from .datasets import Dataset, load_dataset

MODEL_KINDS = ("LR", "KNN", "DT", "NB", "SVM", "SoftVote", "HardVote", "Stack", "Const")
SPLITS = ("whole", "9010")


class DegenerateDatasetError(ValueError):
    """Training needs at least two classes."""


@dataclass(frozen=True)
class ZooModelSpec:
    kind: str
    dataset: str
    split: str = "whole"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}; have {MODEL_KINDS}")
        if self.split not in SPLITS:
            raise ValueError(f"unknown split {self.split!r}; have {SPLITS}")

    @property
    def model_id(self) -> str:
        return f"{self.dataset}_{self.kind}_{self.split}_s{self.seed}"


def _estimator(kind: str, seed: int):
    lr = LogisticRegression(max_iter=2000)
    knn = KNeighborsClassifier(n_neighbors=7)
    dt = DecisionTreeClassifier(random_state=seed)
    if kind == "LR":
        return lr
    if kind == "KNN":
        return knn
    if kind == "DT":
        return dt
    if kind == "NB":
        return GaussianNB()
    if kind == "SVM":
        return SVC(random_state=seed)
    if kind == "SoftVote":
        return VotingClassifier([("lr", lr), ("knn", knn), ("dt", dt)], voting="soft")
    if kind == "HardVote":
        return VotingClassifier([("lr", lr), ("knn", knn), ("dt", dt)], voting="hard")
    if kind == "Stack":
        return StackingClassifier(
            [("lr", lr), ("knn", knn), ("dt", dt)],
            final_estimator=LogisticRegression(max_iter=2000),
            cv=5,
        )
    return DummyClassifier(strategy="most_frequent")  # Const: the underfit sentinel


def build_pipeline(schema: dict, kind: str, seed: int) -> Pipeline:
    cat_cols = [f["name"] for f in schema["features"] if f["kind"] == "categorical"]
    num_cols = [f["name"] for f in schema["features"] if f["kind"] != "categorical"]
    transformers = []
    if cat_cols:
        # dense output: GaussianNB refuses sparse matrices
        enc = OneHotEncoder(handle_unknown="ignore", sparse_output=False)
        transformers.append(("cat", enc, cat_cols))
    if num_cols:
        transformers.append(("num", StandardScaler(), num_cols))
    return Pipeline(
        [("prep", ColumnTransformer(transformers)), ("model", _estimator(kind, seed))]
    )


def to_frame(ds: Dataset) -> pd.DataFrame:
    frame = pd.DataFrame(list(ds.rows), columns=list(ds.feature_names))
    for f in ds.schema["features"]:
        if f["kind"] != "categorical":
            frame[f["name"]] = frame[f["name"]].astype(float)
    return frame


def train(
    spec: ZooModelSpec, models_dir: str | Path, dataset: Dataset | None = None
) -> dict:
    """Fit the spec'd model and write its artifact directory; returns the
    manifest. Deterministic for a fixed spec and dataset."""
    ds = dataset if dataset is not None else load_dataset(spec.dataset)
    if len(set(ds.labels)) < 2:
        raise DegenerateDatasetError(f"dataset {ds.id!r} has a single class")
    frame = to_frame(ds)
    y = np.array(ds.labels)
    if spec.split == "9010":
        x_train, _, y_train, _ = train_test_split(
            frame, y, test_size=0.1, random_state=spec.seed, stratify=y
        )
    else:
        x_train, y_train = frame, y

    pipeline = build_pipeline(ds.schema, spec.kind, spec.seed)
    pipeline.fit(x_train, y_train)

    predictions = [str(v) for v in pipeline.predict(frame)]
    accuracy = float(np.mean(np.array(predictions) == y))
    train_accuracy = float(np.mean(pipeline.predict(x_train) == y_train))
    cv_folds = 10
    cv_score = float(
        np.mean(cross_val_score(
            build_pipeline(ds.schema, spec.kind, spec.seed), x_train, y_train, cv=cv_folds
        ))
    )

    out = Path(models_dir) / spec.model_id
    out.mkdir(parents=True, exist_ok=True)
    joblib.dump(pipeline, out / "model.joblib")
    manifest = {
        "model_id": spec.model_id,
        "kind": spec.kind,
        "dataset": ds.id,
        "split": spec.split,
        "seed": spec.seed,
        "rows": len(ds.rows),
        "classes": list(ds.classes),
        "accuracy": round(accuracy, 6),
        "train_accuracy": round(train_accuracy, 6),
        "cv_score": round(cv_score, 6),
        "cv_folds": cv_folds,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    (out / "schema.json").write_text(json.dumps(ds.schema, indent=2) + "\n")
    (out / "predictions.txt").write_text("\n".join(predictions) + "\n")
    return manifest
