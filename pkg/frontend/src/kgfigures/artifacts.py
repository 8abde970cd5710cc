"""Readers for the kgpilot CLI's flat-file artifacts.

Everything here is read-only and numerics-free: parse the documented CSV and
JSON schemas, map empty cells to NaN, and refuse anything that does not match
the contract. Refusal is always a SchemaError naming the offending file.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SCAN_COLUMNS = [
    "x",
    "re_phi",
    "im_phi",
    "dens",
    "S0",
    "S1",
    "j0",
    "v_debroglie",
    "v_modified",
    "v_energy",
    "eff_mass_sq",
    "flags",
]
TRACE_COLUMNS = ["tau", "x", "t", "dtdtau", "dxdtau"]
TRANSPORT_COLUMNS = ["tau", "x", "t", "et0", "et1", "es0", "es1"]

# Columns whose cells the producer blanks at node/pole/degenerate rows.
_SCAN_OPTIONAL = {"S0", "S1", "v_debroglie", "v_modified", "v_energy", "eff_mass_sq"}
_KNOWN_FLAGS = {"node", "pole", "degenerate"}


class SchemaError(Exception):
    """An input file is missing or does not match the documented schema."""


def _read_rows(path: Path, columns: list[str]) -> list[list[str]]:
    if not path.is_file():
        raise SchemaError(f"{path}: missing input file")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {columns}") from None
        if header != columns:
            raise SchemaError(f"{path}: header {header} does not match schema {columns}")
        rows = list(reader)
    for i, row in enumerate(rows):
        if len(row) != len(columns):
            raise SchemaError(f"{path}: row {i + 1} has {len(row)} cells, expected {len(columns)}")
    return rows


def _column(path: Path, rows: list[list[str]], columns: list[str], name: str,
            optional: bool = False) -> np.ndarray:
    j = columns.index(name)
    out = np.empty(len(rows))
    for i, row in enumerate(rows):
        cell = row[j]
        if cell == "":
            if not optional:
                raise SchemaError(f"{path}: row {i + 1} column {name!r} is empty")
            out[i] = np.nan
            continue
        try:
            out[i] = float(cell)
        except ValueError:
            raise SchemaError(f"{path}: row {i + 1} column {name!r}: bad float {cell!r}") from None
    return out


@dataclass(frozen=True)
class ScanTable:
    """One scan.csv: per-row field diagnostics on an x grid at fixed t."""

    path: Path
    x: np.ndarray
    re_phi: np.ndarray
    im_phi: np.ndarray
    dens: np.ndarray
    s0: np.ndarray
    s1: np.ndarray
    j0: np.ndarray
    v_debroglie: np.ndarray
    v_modified: np.ndarray
    v_energy: np.ndarray
    eff_mass_sq: np.ndarray
    flags: tuple[frozenset[str], ...]

    def velocity(self, column: str) -> np.ndarray:
        return {"v_debroglie": self.v_debroglie,
                "v_modified": self.v_modified,
                "v_energy": self.v_energy}[column]


def read_scan(path: Path) -> ScanTable:
    rows = _read_rows(path, SCAN_COLUMNS)
    if len(rows) < 2:
        raise SchemaError(f"{path}: {len(rows)} data rows, need at least 2 to plot")
    flags = []
    j = SCAN_COLUMNS.index("flags")
    for i, row in enumerate(rows):
        tokens = frozenset(row[j].split(";")) - {""}
        unknown = tokens - _KNOWN_FLAGS
        if unknown:
            raise SchemaError(f"{path}: row {i + 1} has unknown flags {sorted(unknown)}")
        flags.append(tokens)

    def col(name: str) -> np.ndarray:
        return _column(path, rows, SCAN_COLUMNS, name, optional=name in _SCAN_OPTIONAL)

    return ScanTable(
        path=path,
        x=col("x"),
        re_phi=col("re_phi"),
        im_phi=col("im_phi"),
        dens=col("dens"),
        s0=col("S0"),
        s1=col("S1"),
        j0=col("j0"),
        v_debroglie=col("v_debroglie"),
        v_modified=col("v_modified"),
        v_energy=col("v_energy"),
        eff_mass_sq=col("eff_mass_sq"),
        flags=tuple(flags),
    )


@dataclass(frozen=True)
class TraceTable:
    """One trace_NN.csv: a flow line sampled along its path parameter."""

    path: Path
    tau: np.ndarray
    x: np.ndarray
    t: np.ndarray
    dtdtau: np.ndarray
    dxdtau: np.ndarray


def read_trace(path: Path) -> TraceTable:
    rows = _read_rows(path, TRACE_COLUMNS)
    if len(rows) < 2:
        raise SchemaError(f"{path}: {len(rows)} trajectory samples, need at least 2 to plot")

    def col(name: str) -> np.ndarray:
        return _column(path, rows, TRACE_COLUMNS, name)

    return TraceTable(path, col("tau"), col("x"), col("t"), col("dtdtau"), col("dxdtau"))


@dataclass(frozen=True)
class TransportTable:
    """One transport_NN.csv: a dyad frame carried along a flow line.

    frames has shape (n, 4) with columns et0, et1, es0, es1.
    """

    path: Path
    tau: np.ndarray
    x: np.ndarray
    t: np.ndarray
    frames: np.ndarray


def read_transport(path: Path) -> TransportTable:
    rows = _read_rows(path, TRANSPORT_COLUMNS)
    if len(rows) < 2:
        raise SchemaError(f"{path}: {len(rows)} transport samples, need at least 2 to plot")

    def col(name: str) -> np.ndarray:
        return _column(path, rows, TRANSPORT_COLUMNS, name)

    frames = np.column_stack([col(c) for c in ("et0", "et1", "es0", "es1")])
    return TransportTable(path, col("tau"), col("x"), col("t"), frames)


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    tau: float
    x: float
    t: float


@dataclass(frozen=True)
class TraceEntry:
    """One initial condition's outcome as recorded in events.json."""

    ic: tuple[float, float]
    file: str | None
    stop_reason: str | None
    events: tuple[TraceEvent, ...]
    error: str | None
    transport_file: str | None


@dataclass(frozen=True)
class EventsFile:
    path: Path
    law: str
    failures: int
    traces: tuple[TraceEntry, ...]


def _require(mapping, key, path: Path, where: str):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(f"{path}: {where} is missing key {key!r}")
    return mapping[key]


def read_events(path: Path) -> EventsFile:
    if not path.is_file():
        raise SchemaError(f"{path}: missing input file")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    law = _require(payload, "law", path, "top level")
    failures = _require(payload, "failures", path, "top level")
    raw_traces = _require(payload, "traces", path, "top level")
    if not isinstance(raw_traces, list):
        raise SchemaError(f"{path}: 'traces' must be a list")
    entries = []
    for i, raw in enumerate(raw_traces):
        where = f"traces[{i}]"
        ic = _require(raw, "ic", path, where)
        if not (isinstance(ic, list) and len(ic) == 2):
            raise SchemaError(f"{path}: {where} 'ic' must be a pair")
        events = []
        for k, ev in enumerate(_require(raw, "events", path, where)):
            ev_where = f"{where}.events[{k}]"
            events.append(TraceEvent(
                kind=str(_require(ev, "kind", path, ev_where)),
                tau=float(_require(ev, "tau", path, ev_where)),
                x=float(_require(ev, "x", path, ev_where)),
                t=float(_require(ev, "t", path, ev_where)),
            ))
        entries.append(TraceEntry(
            ic=(float(ic[0]), float(ic[1])),
            file=_require(raw, "file", path, where),
            stop_reason=_require(raw, "stop_reason", path, where),
            events=tuple(events),
            error=_require(raw, "error", path, where),
            transport_file=raw.get("transport_file"),
        ))
    return EventsFile(path, str(law), int(failures), tuple(entries))
