"""Figure specifications: which artifact files feed which of the 7 figures.

Figures 1/4/6 overlay a scan (density dotted, velocity solid, S0 dashed),
figures 2/5/7 draw trajectory polylines with event markers, and figure 3
draws the Fermi-transported dyad as arrows along a loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .artifacts import SchemaError

FIGURE_IDS = (1, 2, 3, 4, 5, 6, 7)

# Which scan column each overlay figure plots as its velocity curve.
VELOCITY_COLUMN = {1: "v_debroglie", 4: "v_modified", 6: "v_energy"}

STYLE_SCAN: Mapping[str, str] = MappingProxyType(
    {"density": "dotted", "velocity": "solid", "s0": "dashed"}
)
STYLE_PATH: Mapping[str, str] = MappingProxyType({"path": "solid"})


@dataclass(frozen=True)
class FigureSpec:
    """Figure id, the concrete input files, styles, and optional axis ranges.

    axes, when given, is (x_lo, x_hi, y_lo, y_hi); the default is the data
    extent padded by 5 percent on each side.
    """

    figure: int
    inputs: tuple[Path, ...]
    style: Mapping[str, str] = field(default_factory=dict)
    axes: tuple[float, float, float, float] | None = None

    def __post_init__(self) -> None:
        if self.figure not in FIGURE_IDS:
            raise ValueError(f"figure id must be 1..7, got {self.figure!r}")
        if not self.inputs:
            raise SchemaError(f"fig{self.figure}: no input files")
        missing = [str(p) for p in self.inputs if not p.is_file()]
        if missing:
            raise SchemaError(f"fig{self.figure}: missing input files: {', '.join(missing)}")
        if self.axes is not None:
            x_lo, x_hi, y_lo, y_hi = self.axes
            if not (x_lo < x_hi and y_lo < y_hi):
                raise ValueError(f"axes must be increasing pairs, got {self.axes!r}")


def input_root(in_dir: Path, figure: int) -> Path:
    """Per-figure subdirectory fig1..fig7 when present, else in_dir itself.

    Each figure's inputs come from one CLI run, so a full set of seven lives
    naturally as seven preset output directories under one root.
    """
    sub = in_dir / f"fig{figure}"
    return sub if sub.is_dir() else in_dir


def spec_for(figure: int, in_dir: Path) -> FigureSpec:
    """Resolve and validate the input files for one figure."""
    if figure not in FIGURE_IDS:
        raise ValueError(f"figure id must be 1..7, got {figure!r}")
    root = input_root(in_dir, figure)
    if figure in VELOCITY_COLUMN:
        return FigureSpec(figure, (root / "scan.csv",), STYLE_SCAN)
    if figure == 3:
        transports = sorted(root.glob("transport_*.csv"))
        if not transports:
            raise SchemaError(f"fig3: no transport_*.csv files in {root}")
        inputs: list[Path] = []
        for tp in transports:
            trace = root / tp.name.replace("transport_", "trace_")
            inputs.extend((trace, tp))
        return FigureSpec(figure, tuple(inputs), STYLE_PATH)
    traces = sorted(root.glob("trace_*.csv"))
    if not traces:
        raise SchemaError(f"fig{figure}: no trace_*.csv files in {root}")
    return FigureSpec(figure, (*traces, root / "events.json"), STYLE_PATH)
