"""Shipped group presets and endomorphisms, plus their JSON loaders.

Group document schema::

    {"name": "Zx2", "kind": "direct", "factors": [
        {"kind": "free", "rank": 1, "generators": ["x"]},
        {"kind": "finite", "table": [[0, 1], [1, 0]], "table_generators": [1],
         "generators": ["t"]}]}

``kind`` is one of ``free`` (needs ``rank``), ``finite`` (needs ``table`` and
``table_generators``), ``direct`` and ``free_product`` (need ``factors``).
``generators`` optionally names the positive letters (single lowercase
characters).

Endomorphism document schema::

    {"group": "F3", "name": "collapse_c", "images": {"a": "a", "b": "b", "c": "1"}}
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .groups import (DirectProduct, FiniteGroup, FreeGroup, FreeProduct,
                     GroupModel, cyclic_table)


@dataclass(frozen=True)
class GroupPreset:
    name: str
    model: GroupModel
    expected_delta: float | None = None
    hyperbolic: bool = True


def model_from_dict(doc: dict) -> GroupModel:
    kind = doc.get("kind")
    names = doc.get("generators")
    if kind == "free":
        return FreeGroup(int(doc["rank"]), names)
    if kind == "finite":
        return FiniteGroup(doc["table"], doc["table_generators"], names)
    if kind == "direct":
        return DirectProduct([model_from_dict(f) for f in doc["factors"]])
    if kind == "free_product":
        factors = [model_from_dict(f) for f in doc["factors"]]
        if not all(isinstance(f, FiniteGroup) for f in factors):
            raise ValueError("free_product factors must be finite tables")
        return FreeProduct(factors)
    raise ValueError(f"unknown group kind {kind!r}")


Z2_TABLE = cyclic_table(2)

GROUP_DOCS = {
    "F2": {"name": "F2", "kind": "free", "rank": 2, "generators": ["a", "b"]},
    "F3": {"name": "F3", "kind": "free", "rank": 3, "generators": ["a", "b", "c"]},
    "Zx2": {"name": "Zx2", "kind": "direct", "factors": [
        {"kind": "free", "rank": 1, "generators": ["x"]},
        {"kind": "finite", "table": Z2_TABLE, "table_generators": [1], "generators": ["t"]}]},
    "Dinf": {"name": "Dinf", "kind": "free_product", "factors": [
        {"kind": "finite", "table": Z2_TABLE, "table_generators": [1], "generators": ["s"]},
        {"kind": "finite", "table": Z2_TABLE, "table_generators": [1], "generators": ["r"]}]},
    "Z2": {"name": "Z2", "kind": "direct", "factors": [
        {"kind": "free", "rank": 1, "generators": ["x"]},
        {"kind": "free", "rank": 1, "generators": ["y"]}]},
}

# thin-triangle delta at vertex scale on the translation-reduced scan domain;
# Zx2's value was produced by the independent BFS oracle in tests/oracles.py
EXPECTED_DELTA = {"F2": 0, "F3": 0, "Dinf": 0, "Zx2": 1, "Z2": None}

PRESETS = {
    name: GroupPreset(name, model_from_dict(doc), EXPECTED_DELTA[name], hyperbolic=name != "Z2")
    for name, doc in GROUP_DOCS.items()
}

ENDO_DOCS = [
    {"group": "F2", "name": "identity", "images": {"a": "a", "b": "b"}},
    {"group": "F3", "name": "identity", "images": {"a": "a", "b": "b", "c": "c"}},
    {"group": "Zx2", "name": "identity", "images": {"x": "x", "t": "t"}},
    {"group": "Dinf", "name": "identity", "images": {"s": "s", "r": "r"}},
    {"group": "Z2", "name": "identity", "images": {"x": "x", "y": "y"}},
    {"group": "F2", "name": "doubling", "images": {"a": "aa", "b": "bb"}},
    {"group": "F2", "name": "ab_ba", "images": {"a": "ab", "b": "ba"}},
    {"group": "F3", "name": "collapse_c", "images": {"a": "a", "b": "b", "c": "1"}},
    {"group": "Zx2", "name": "collapse_x", "images": {"x": "1", "t": "t"}},
]


def get_preset(name: str) -> GroupPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown group preset {name!r}; choose from {sorted(PRESETS)}") from None


def load_group(spec: str) -> GroupPreset:
    """Preset name or path to a group JSON document."""
    if spec in PRESETS:
        return PRESETS[spec]
    doc = json.loads(Path(spec).read_text())
    return GroupPreset(doc.get("name", Path(spec).stem), model_from_dict(doc), doc.get("expected_delta"))


def endo_doc(group: str, name: str) -> dict:
    for d in ENDO_DOCS:
        if d["group"] == group and d["name"] == name:
            return d
    raise KeyError(f"no shipped endomorphism {name!r} on {group}")
