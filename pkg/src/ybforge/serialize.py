"""Canonical JSON for every object the tools read or write.

Canonical form: sorted keys, no insignificant whitespace, integers only,
UTF-8, one trailing newline.  Emitting a parsed canonical file reproduces it
byte for byte.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

import numpy as np

from .groups import FiniteGroup, GroupAction
from .iybgroup import (
    BijectiveCocycle,
    GeneratorMorphism,
    IYBMorphism,
    check_cocycle,
    check_generator_morphism,
    check_iyb_morphism,
)
from .perm import Permutation
from .ybe import IYBMap, SetSolution, check_iyb_map


class FormatError(ValueError):
    pass


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def canonical_dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def content_id(obj) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode("utf-8")).hexdigest()


def write_json(path, obj) -> Path:
    """Write a plain JSON value or any object with ``to_json``."""
    if not isinstance(obj, (dict, list)):
        obj = to_json(obj)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_dumps(obj), encoding="utf-8")
    return path


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc


def detect_kind(obj: dict) -> str:
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    keys = set(obj)
    if {"group", "target", "action", "pi"} <= keys:
        return "cocycle"
    if {"group", "gen_set", "mu"} <= keys:
        return "generator_morphism"
    if {"group", "mu"} <= keys:
        return "morphism"
    if {"f", "g"} <= keys:
        return "solution"
    if "lambda" in keys:
        return "map"
    if "table" in keys:
        return "group"
    if "images" in keys:
        return "permutation"
    raise FormatError(f"cannot tell what kind of object has keys {sorted(keys)}")


def _group(ref, base_dir) -> FiniteGroup:
    if isinstance(ref, str):
        path = Path(ref)
        if not path.is_absolute() and base_dir is not None:
            path = Path(base_dir) / path
        ref = read_json(path)
    if not isinstance(ref, dict) or "table" not in ref:
        raise FormatError("group must be an inline object with a table or a path to one")
    return FiniteGroup.from_json(ref)


def parse_map(obj) -> IYBMap:
    """Verified map; raises VerificationError if the identity fails."""
    try:
        rows = obj["lambda"]
        size = obj.get("size", len(rows))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"map needs 'lambda': {exc}") from exc
    return check_iyb_map(rows, size=size)


def parse_map_unchecked(obj) -> list[Permutation]:
    rows = obj["lambda"]
    size = obj.get("size", len(rows))
    if len(rows) != size:
        raise FormatError("size does not match the number of permutations")
    return [Permutation(r) for r in rows]


def parse_solution(obj) -> SetSolution:
    try:
        return SetSolution.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"solution needs 'size', 'f', 'g': {exc}") from exc


def parse_morphism(obj, base_dir=None) -> IYBMorphism:
    g = _group(obj["group"], base_dir)
    return check_iyb_morphism(g, np.asarray(obj["mu"], dtype=np.int64))


def parse_generator_morphism(obj, base_dir=None) -> GeneratorMorphism:
    g = _group(obj["group"], base_dir)
    return check_generator_morphism(g, obj["gen_set"], np.asarray(obj["mu"], dtype=np.int64))


def parse_cocycle(obj, base_dir=None) -> BijectiveCocycle:
    g = _group(obj["group"], base_dir)
    a = _group(obj["target"], base_dir)
    return check_cocycle(g, a, np.asarray(obj["action"], dtype=np.int64),
                         np.asarray(obj["pi"], dtype=np.int64))


def load(path):
    """Parse and verify any supported file; returns ``(kind, object)``."""
    obj = read_json(path)
    kind = detect_kind(obj)
    base = os.path.dirname(os.path.abspath(path))
    parsers = {
        "map": lambda o: parse_map(o),
        "solution": lambda o: parse_solution(o),
        "morphism": lambda o: parse_morphism(o, base),
        "generator_morphism": lambda o: parse_generator_morphism(o, base),
        "cocycle": lambda o: parse_cocycle(o, base),
        "group": lambda o: FiniteGroup.from_json(o),
        "permutation": lambda o: Permutation.from_json(o),
    }
    return kind, parsers[kind](obj)


def to_json(obj) -> dict:
    if isinstance(obj, (IYBMap, SetSolution, IYBMorphism, GeneratorMorphism, BijectiveCocycle,
                        FiniteGroup, Permutation)):
        return obj.to_json()
    if isinstance(obj, GroupAction):
        return {"per_element": obj.per_element.tolist()}
    raise TypeError(f"cannot serialise {type(obj).__name__}")
