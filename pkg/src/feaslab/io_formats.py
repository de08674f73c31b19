"""On-disk formats: constellation documents, trace/sweep CSV, map PGM.

Every writer is deterministic byte for byte.  Floats are serialized as their
shortest round-trip decimal form (``repr``), so loading reproduces the exact
binary64 values.  CSV and PGM artifacts can carry a manifest as ``#`` comment
lines; the constellation document carries the same fields as JSON keys.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from .algorithms import OrbitTrace, governing_point
from .experiments import IterationMap, SweepResult
from .geometry import Constellation, FinitePointSet, Point, Region

__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "constellation_to_dict",
    "constellation_from_dict",
    "dump_constellation",
    "load_constellation",
    "manifest_comments",
    "encode_map_pgm",
    "write_sweep_csv",
    "write_trace_csv",
    "prepend_manifest",
]

FORMAT_VERSION = 1


class FormatError(ValueError):
    """A document is malformed, the wrong version, or breaks an invariant."""


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def manifest_comments(kind: str, fields: dict) -> list[str]:
    """Self-description lines, one ``# key: value`` per field."""
    lines = [
        f"# format_version: {FORMAT_VERSION}",
        f"# kind: {kind}",
    ]
    for key, value in fields.items():
        lines.append(f"# {key}: {_fmt(value)}")
    return lines


def prepend_manifest(body: bytes, kind: str, fields: dict) -> bytes:
    """Body bytes with manifest comment lines in front (used for CSV files)."""
    head = "".join(line + "\n" for line in manifest_comments(kind, fields))
    return head.encode("ascii") + body


# -- constellation documents -------------------------------------------------

def constellation_to_dict(constellation: Constellation) -> dict:
    hint = constellation.feasible_hint
    return {
        "format_version": FORMAT_VERSION,
        "kind": "constellation",
        "metadata": dict(constellation.provenance),
        "region": {
            "xmin": constellation.region.xmin,
            "xmax": constellation.region.xmax,
            "ymin": constellation.region.ymin,
            "ymax": constellation.region.ymax,
        },
        "feasible_hint": None if hint is None else [hint.x, hint.y],
        "sets": [[[p.x, p.y] for p in s.points] for s in constellation.sets],
    }


def _require(data: dict, key: str):
    if key not in data:
        raise FormatError(f"document is missing the {key!r} key")
    return data[key]


def _as_coord_pair(value, what: str) -> tuple[float, float]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)
    ):
        raise FormatError(f"{what} must be a pair of numbers, got {value!r}")
    return float(value[0]), float(value[1])


def constellation_from_dict(data) -> Constellation:
    if not isinstance(data, dict):
        raise FormatError("constellation document must be a mapping")
    version = _require(data, "format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}, expected {FORMAT_VERSION}")
    kind = _require(data, "kind")
    if kind != "constellation":
        raise FormatError(f"expected a constellation document, got kind {kind!r}")

    raw_region = _require(data, "region")
    if not isinstance(raw_region, dict):
        raise FormatError("region must be a mapping with xmin/xmax/ymin/ymax")
    try:
        region = Region(
            xmin=float(_require(raw_region, "xmin")),
            xmax=float(_require(raw_region, "xmax")),
            ymin=float(_require(raw_region, "ymin")),
            ymax=float(_require(raw_region, "ymax")),
        )
    except (TypeError, ValueError) as exc:
        raise FormatError(f"invalid region: {exc}") from exc

    raw_sets = _require(data, "sets")
    if not isinstance(raw_sets, list) or not raw_sets:
        raise FormatError("sets must be a non-empty list of point lists")
    sets = []
    for i, raw_set in enumerate(raw_sets):
        if not isinstance(raw_set, list) or not raw_set:
            raise FormatError(f"set {i} must be a non-empty list of points")
        points = [Point(*_as_coord_pair(rp, f"point {j} of set {i}")) for j, rp in enumerate(raw_set)]
        if len({(p.x, p.y) for p in points}) != len(points):
            raise FormatError(f"set {i} contains a duplicate point")
        try:
            sets.append(FinitePointSet(points))
        except ValueError as exc:
            raise FormatError(f"invalid set {i}: {exc}") from exc

    hint = data.get("feasible_hint")
    feasible_hint = None if hint is None else Point(*_as_coord_pair(hint, "feasible_hint"))

    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise FormatError("metadata must be a mapping")
    try:
        return Constellation(sets, region=region, feasible_hint=feasible_hint, provenance=metadata)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def dump_constellation(constellation: Constellation) -> bytes:
    text = json.dumps(constellation_to_dict(constellation), indent=2)
    return (text + "\n").encode("utf-8")


def load_constellation(raw: bytes | str) -> Constellation:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a valid constellation document: {exc}") from exc
    return constellation_from_dict(data)


# -- iteration-count images ---------------------------------------------------

def encode_map_pgm(imap: IterationMap) -> bytes:
    """Binary PGM (P5): pixel = round(255 * count / cap), row 0 at the top."""
    cap = imap.max_iterations
    levels = np.rint(imap.counts * (255.0 / cap)).astype(np.uint8)
    fields = dict(imap.metadata)
    fields["region"] = " ".join(
        repr(v) for v in (imap.region.xmin, imap.region.xmax, imap.region.ymin, imap.region.ymax)
    )
    header = "P5\n"
    header += "".join(line + "\n" for line in manifest_comments("iteration-map", fields))
    header += f"{imap.width} {imap.height}\n255\n"
    return header.encode("ascii") + levels.tobytes(order="C")


# -- CSV artifacts ------------------------------------------------------------

def _csv_bytes(header: str, rows: Iterable[Iterable]) -> bytes:
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def write_sweep_csv(sweep: SweepResult) -> bytes:
    """Header plus one ``lambda,rate`` row per swept value."""
    return _csv_bytes("lambda,rate", zip(sweep.lambdas, sweep.rates))


def write_trace_csv(trace: OrbitTrace) -> bytes:
    """Header plus one row per trace index 0..L-1.

    ``x,y`` follow the governing point (block mean for the product-space
    scheme), ``monitored_*`` the sequence the stopping rule watches.
    """
    rows = []
    for k, (state, mon, d) in enumerate(zip(trace.governing, trace.monitored, trace.errors)):
        g = governing_point(state)
        rows.append((k, g.x, g.y, mon.x, mon.y, d))
    return _csv_bytes("k,x,y,monitored_x,monitored_y,d", rows)
