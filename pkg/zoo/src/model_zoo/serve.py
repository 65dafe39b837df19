"""Serve a trained model over the line protocol.

First line out is the hello advertising the dataset schema's feature count and
kinds; afterwards each `{"id": N, "x": [...]}` request is answered with
`{"id": N, "label": "..."}`. Malformed lines get an error response with a null
id and the server keeps running; `{"bye": true}` ends the session. Requests
are handled one at a time (the hello says `"concurrent": false`).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import joblib
import pandas as pd


def _respond(out, payload: dict):
    out.write(json.dumps(payload, separators=(",", ":")) + "\n")
    out.flush()


def load_artifacts(models_dir: str | Path, model_id: str):
    root = Path(models_dir) / model_id
    manifest = json.loads((root / "manifest.json").read_text())
    schema = json.loads((root / "schema.json").read_text())
    pipeline = joblib.load(root / "model.joblib")
    return manifest, schema, pipeline


def _coerce_row(schema: dict, xs: list):
    feats = schema["features"]
    if not isinstance(xs, list) or len(xs) != len(feats):
        raise ValueError(f"expected {len(feats)} feature values, got {xs!r}")
    row = {}
    for f, v in zip(feats, xs):
        if f["kind"] == "categorical":
            if not isinstance(v, str):
                raise ValueError(f"feature {f['name']} wants a string, got {v!r}")
            row[f["name"]] = v
        else:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValueError(f"feature {f['name']} wants a number, got {v!r}")
            row[f["name"]] = float(v)
    return row


def serve(models_dir: str | Path, model_id: str, stdin=None, stdout=None) -> None:
    inp = stdin if stdin is not None else sys.stdin
    out = stdout if stdout is not None else sys.stdout
    manifest, schema, pipeline = load_artifacts(models_dir, model_id)
    kinds = [f["kind"] for f in schema["features"]]
    _respond(
        out,
        {
            "hello": {
                "features": len(kinds),
                "kinds": kinds,
                "labels": manifest["classes"],
                "concurrent": False,
            }
        },
    )
    columns = [f["name"] for f in schema["features"]]
    for line in inp:
        line = line.strip()
        if not line:
            continue
        try:
            msg = json.loads(line)
        except ValueError:
            _respond(out, {"id": None, "error": "unparseable request line"})
            continue
        if not isinstance(msg, dict):
            _respond(out, {"id": None, "error": "request must be a JSON object"})
            continue
        if msg.get("bye"):
            return
        req_id = msg.get("id")
        try:
            row = _coerce_row(schema, msg.get("x"))
            frame = pd.DataFrame([row], columns=columns)
            label = str(pipeline.predict(frame)[0])
        except Exception as err:  # noqa: BLE001 - any bad request keeps the server alive
            _respond(out, {"id": req_id if isinstance(req_id, int) else None, "error": str(err)})
            continue
        _respond(out, {"id": req_id, "label": label})
