"""Synthetic tabular datasets, a small trained-model family, and a line
protocol server that exposes each model as a black-box classifier."""

from .datasets import Dataset, catalog, dataset_ids, load_dataset, validate_row
from .train import (
    DegenerateDatasetError,
    MODEL_KINDS,
    SPLITS,
    ZooModelSpec,
    build_pipeline,
    to_frame,
    train,
)
from .serve import load_artifacts, serve

__version__ = "0.1.0"
