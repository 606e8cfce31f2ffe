"""Reading and writing frame files.

Two formats are accepted.  The structured format is a JSON object
``{"dim": n, "vectors": [[...], ...], "labels": [...]?, "tolerances":
{...}?}``; the plain format is whitespace-separated reals, one vector per
line, with ``#`` comments.  Vectors are stored one per row in both
formats, even though the literature prints frames as column matrices.
Rows within 1e-6 of unit norm are renormalized with a warning; anything
farther off is rejected.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError, ShapeError
from .frames import UnitVectorSystem

_TOLERANCE_KEYS = ("eq_abs", "neighbor_abs", "hull_abs", "rank_rel")


def round15(x: float) -> float:
    """Round to 15 significant digits (the report/file precision)."""
    return float(f"{float(x):.15g}")


def parse_frame(text: str) -> UnitVectorSystem:
    """Parse frame file content (either format) into a validated system."""
    system, _ = parse_frame_with_overrides(text)
    return system


def parse_frame_with_overrides(text: str) -> tuple[UnitVectorSystem, dict]:
    """Like :func:`parse_frame` but also returns tolerance overrides."""
    stripped = _strip_comments(text)
    if not stripped.strip():
        raise ParseError("empty frame file")
    if stripped.lstrip()[0] == "{":
        return _parse_structured(text)
    return _parse_plain(stripped), {}


def _strip_comments(text: str) -> str:
    lines = []
    for line in text.splitlines():
        hash_pos = line.find("#")
        if hash_pos >= 0:
            line = line[:hash_pos]
        lines.append(line)
    return "\n".join(lines)


def _parse_plain(text: str) -> UnitVectorSystem:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ParseError("no vectors found")
    width = len(rows[0])
    for idx, row in enumerate(rows):
        if len(row) != width:
            raise ShapeError(
                f"row {idx} has {len(row)} entries, expected {width} (ragged rows)"
            )
    return UnitVectorSystem.from_vectors(np.array(rows))


def _parse_structured(text: str) -> tuple[UnitVectorSystem, dict]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("structured frame file must be a JSON object")
    if "dim" not in obj or "vectors" not in obj:
        raise ParseError('structured frame file needs "dim" and "vectors" keys')
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f'"dim" must be a positive integer, got {dim!r}')
    vectors = obj["vectors"]
    if not isinstance(vectors, list) or not vectors:
        raise ParseError('"vectors" must be a nonempty list of rows')
    rows = []
    for idx, row in enumerate(vectors):
        if not isinstance(row, list):
            raise ParseError(f"row {idx} is not a list")
        if len(row) != dim:
            raise ShapeError(f"row {idx} has {len(row)} entries, expected dim = {dim}")
        try:
            rows.append([float(v) for v in row])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"row {idx}: {exc}") from None
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list):
            raise ParseError('"labels" must be a list')
        if len(labels) != len(rows):
            raise ShapeError(f"{len(labels)} labels for {len(rows)} vectors")
    overrides = {}
    tols = obj.get("tolerances")
    if tols is not None:
        if not isinstance(tols, dict):
            raise ParseError('"tolerances" must be an object')
        for key, value in tols.items():
            if key not in _TOLERANCE_KEYS:
                raise ParseError(f"unknown tolerance {key!r}")
            overrides[key] = float(value)
    return UnitVectorSystem.from_vectors(np.array(rows), labels=labels), overrides


def emit_frame(system: UnitVectorSystem) -> str:
    """Serialize a system to the structured format (15 significant digits)."""
    payload: dict = {
        "dim": system.dim,
        "vectors": [[round15(v) for v in row] for row in system.vectors],
    }
    if system.labels:
        payload["labels"] = list(system.labels)
    return json.dumps(payload, indent=2) + "\n"
