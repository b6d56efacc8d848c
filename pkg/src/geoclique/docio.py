"""JSON instance and solution documents.

Instances serialize with a fixed key order and ``repr``-exact floats, so
``parse(dump(x))`` reproduces ``x`` bit for bit and re-dumping is byte-identical.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from .geometry import Ball, GeometricInstance
from .graphkit import Graph, MalformedInputError, read_dimacs

FORMAT = "geoclique-instance/1"


def instance_to_dict(inst: GeometricInstance) -> dict:
    doc = {"format": FORMAT, "dim": inst.dim}
    if inst.kind == "points":
        doc["points"] = [list(p) for p in inst.points]
        doc["threshold"] = inst.threshold
    else:
        doc["objects"] = [{"center": list(b.center), "radius": b.radius} for b in inst.balls]
    if inst.weights is not None:
        doc["weights"] = list(inst.weights)
    if inst.metadata:
        doc["metadata"] = inst.metadata
    return doc


def dumps_instance(inst: GeometricInstance) -> str:
    return canonical_json(instance_to_dict(inst))


def _floats(seq, where):
    out = []
    for x in seq:
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise MalformedInputError(f"non-numeric or non-finite value {x!r} in {where}")
        out.append(float(x))
    return out


def instance_from_dict(doc: dict) -> GeometricInstance:
    if not isinstance(doc, dict) or "dim" not in doc:
        raise MalformedInputError("instance document needs a 'dim' field")
    dim = doc["dim"]
    weights = doc.get("weights")
    meta = doc.get("metadata") or {}
    try:
        if "points" in doc:
            pts = [tuple(_floats(p, "points")) for p in doc["points"]]
            if "threshold" not in doc:
                raise MalformedInputError("point instance without 'threshold'")
            return GeometricInstance(dim, points=pts, threshold=doc["threshold"], weights=weights, metadata=meta)
        if "objects" in doc:
            balls = [Ball(tuple(_floats(o["center"], "center")), o["radius"]) for o in doc["objects"]]
            return GeometricInstance(dim, balls=balls, weights=weights, metadata=meta)
    except (KeyError, TypeError) as exc:
        raise MalformedInputError(f"malformed instance object: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, MalformedInputError):
            raise
        raise MalformedInputError(str(exc)) from None
    raise MalformedInputError("instance document needs 'objects' or 'points'")


def loads_instance(text: str) -> GeometricInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(exc.msg, exc.lineno, exc.colno) from None
    return instance_from_dict(doc)


def load_input(path: str | Path) -> GeometricInstance | Graph:
    """A JSON instance document or a DIMACS-like graph file, sniffed by content."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return loads_instance(text)
    return read_dimacs(text)


def write_text(path, text: str):
    if path in (None, "-"):
        import sys
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"), allow_nan=False, default=_default) + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return float(x)
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def strip_elapsed(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "elapsed_ms"}
