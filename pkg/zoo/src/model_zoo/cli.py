"""model-zoo command line: train models, serve them, list datasets."""

from __future__ import annotations

import argparse
import json
import sys

from .datasets import catalog
from .serve import serve
from .train import MODEL_KINDS, SPLITS, ZooModelSpec, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="model-zoo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="fit a model and write its artifact directory")
    p_train.add_argument("--model", required=True, choices=MODEL_KINDS)
    p_train.add_argument("--dataset", required=True)
    p_train.add_argument("--split", default="whole", choices=SPLITS)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--models-dir", default="zoo/models")

    p_serve = sub.add_parser("serve", help="speak the line protocol for a trained model")
    p_serve.add_argument("--model-id", required=True)
    p_serve.add_argument("--models-dir", default="zoo/models")

    sub.add_parser("datasets", help="list the bundled datasets")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "train":
        manifest = train(
            ZooModelSpec(args.model, args.dataset, args.split, args.seed), args.models_dir
        )
        print(json.dumps(manifest, indent=2, sort_keys=True))
        return 0
    if args.command == "serve":
        serve(args.models_dir, args.model_id)
        return 0
    print(json.dumps(catalog(), indent=2))
    return 0


def run() -> None:
    sys.exit(main())
