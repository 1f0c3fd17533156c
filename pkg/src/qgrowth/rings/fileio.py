"""File ingestion for fusion rings and finite groups.

Fusion-ring file (JSON, UTF-8)::

    { "unit": "<id>",
      "irreps": [ { "id": "<id>", "dim": <int>,
                    "qdim": <float, optional, default dim>,
                    "conj": "<id>" }, ... ],
      "fusion": [ { "left": "<id>", "right": "<id>",
                    "out": { "<id>": <int>, ... } }, ... ] }

Fusion must be total for finite rings: a missing (left, right) pair is
an error.  Finite-group file::

    { "elements": ["e", ...], "mult_table": [[<index>, ...], ...] }

row-major, mult_table[i][j] = index of g_i g_j.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import SpecError
from .base import IrrepData, TableRing
from .families import FiniteGroupTable, GroupDualRing


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecError(f"{path}: top level must be a JSON object")
    return data


def load_fusion_ring_file(path) -> TableRing:
    """Load and structurally validate a fusion-ring file."""
    data = _read_json(path)
    for key in ("unit", "irreps", "fusion"):
        if key not in data:
            raise SpecError(f"{path}: missing key {key!r}")
    irreps = []
    seen = set()
    for entry in data["irreps"]:
        try:
            label = entry["id"]
            dim = int(entry["dim"])
            conj = entry["conj"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"{path}: bad irrep entry {entry!r}") from exc
        if label in seen:
            raise SpecError(f"{path}: duplicate irrep id {label!r}")
        seen.add(label)
        if dim < 1:
            raise SpecError(f"{path}: irrep {label!r} has dim {dim} < 1")
        qdim = entry.get("qdim", dim)
        irreps.append(IrrepData(label, dim, qdim, conj))
    for d in irreps:
        if d.conj not in seen:
            raise SpecError(f"{path}: conj of {d.id!r} is unknown id {d.conj!r}")
    fusion = {}
    for entry in data["fusion"]:
        try:
            left, right, out = entry["left"], entry["right"], entry["out"]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"{path}: bad fusion entry {entry!r}") from exc
        if left not in seen or right not in seen:
            raise SpecError(f"{path}: fusion entry for unknown pair "
                            f"({left!r}, {right!r})")
        clean = {}
        for w, m in out.items():
            if w not in seen:
                raise SpecError(f"{path}: fusion output unknown id {w!r}")
            m = int(m)
            if m < 0:
                raise SpecError(f"{path}: negative multiplicity for {w!r}")
            if m:
                clean[w] = m
        fusion[(left, right)] = clean
    try:
        return TableRing(data["unit"], irreps, fusion, spec=f"file:{path}")
    except Exception as exc:
        raise SpecError(f"{path}: {exc}") from exc


def load_finite_group_file(path) -> FiniteGroupTable:
    """Load a finite group given by elements and a multiplication table."""
    data = _read_json(path)
    for key in ("elements", "mult_table"):
        if key not in data:
            raise SpecError(f"{path}: missing key {key!r}")
    try:
        return FiniteGroupTable(list(data["elements"]),
                                [list(r) for r in data["mult_table"]],
                                name=f"group:{path}")
    except SpecError as exc:
        raise SpecError(f"{path}: {exc}") from exc


def group_dual_ring_from_file(path) -> GroupDualRing:
    group = load_finite_group_file(path)
    return GroupDualRing(group, spec=f"group-dual:file={path}")
