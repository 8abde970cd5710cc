"""Build and save the seven standard figures from CLI artifacts.

Figures are assembled fully in memory before anything touches disk, so a
schema failure never leaves a partial image. Axis ranges default to the
extent of the plotted data padded by 5 percent on each side.
"""

from __future__ import annotations

import os
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from . import artifacts
from .artifacts import SchemaError
from .figspec import VELOCITY_COLUMN, FigureSpec

_TITLES = {
    1: "fig1: de Broglie flow over the box",
    2: "fig2: de Broglie flow lines",
    3: "fig3: Fermi-transported dyad along a loop",
    4: "fig4: |S0|-modified flow over the box",
    5: "fig5: |S0|-modified flow lines",
    6: "fig6: energy-flow velocity over the box",
    7: "fig7: energy-flow paths",
}
_VELOCITY_LABEL = {1: "v (de Broglie)", 4: "v (modified)", 6: "v (energy flow)"}
_MARKERS = {
    "SelfIntersection": {"marker": "x", "color": "k"},
    "S0SignChange": {"marker": "o", "color": "k", "markerfacecolor": "none"},
}
_ARROW_FRACTION = 0.06  # dyad arrow length as a fraction of the path extent
_ARROW_STATIONS = 24
# Looping runs record tens of thousands of crossings; an even subsample keeps
# the marker layer legible and the vector output a sane size.
_MAX_MARKERS = 400


def _finite_extent(arrays: list[np.ndarray], what: str, figure: int) -> tuple[float, float]:
    vals = np.concatenate([np.ravel(a) for a in arrays])
    vals = vals[np.isfinite(vals)]
    if vals.size == 0:
        raise SchemaError(f"fig{figure}: no finite {what} values to plot")
    return float(vals.min()), float(vals.max())


def _padded(lo: float, hi: float) -> tuple[float, float]:
    pad = 0.05 * (hi - lo) if hi > lo else 0.5
    return lo - pad, hi + pad


def _set_limits(ax, spec: FigureSpec, xs: list[np.ndarray], ys: list[np.ndarray]) -> None:
    if spec.axes is not None:
        x_lo, x_hi, y_lo, y_hi = spec.axes
        ax.set_xlim(x_lo, x_hi)
        ax.set_ylim(y_lo, y_hi)
        return
    ax.set_xlim(*_padded(*_finite_extent(xs, "x", spec.figure)))
    ax.set_ylim(*_padded(*_finite_extent(ys, "y", spec.figure)))


def _new_axes(figure: int, figsize: tuple[float, float]):
    fig = Figure(figsize=figsize)
    FigureCanvasAgg(fig)
    ax = fig.subplots()
    ax.set_title(_TITLES[figure])
    return fig, ax


def _build_scan_overlay(spec: FigureSpec) -> Figure:
    table = artifacts.read_scan(spec.inputs[0])
    velocity = table.velocity(VELOCITY_COLUMN[spec.figure])
    fig, ax = _new_axes(spec.figure, (7.0, 4.5))
    ax.axhline(0.0, color="0.85", linewidth=0.6, zorder=0)
    series = [
        ("density", table.dens, spec.style.get("density", "dotted"), "C0", "|phi|^2"),
        ("velocity", velocity, spec.style.get("velocity", "solid"), "C1",
         _VELOCITY_LABEL[spec.figure]),
        ("s0", table.s0, spec.style.get("s0", "dashed"), "C2", "S_0"),
    ]
    for gid, y, ls, color, label in series:
        line, = ax.plot(table.x, y, linestyle=ls, color=color, label=label, linewidth=1.2)
        line.set_gid(gid)
    _set_limits(ax, spec, [table.x], [y for _, y, _, _, _ in series])
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.legend(loc="best")
    return fig


def _build_paths(spec: FigureSpec) -> Figure:
    *trace_paths, events_path = spec.inputs
    traces = [artifacts.read_trace(p) for p in trace_paths]
    events = artifacts.read_events(events_path)
    fig, ax = _new_axes(spec.figure, (6.0, 6.0))
    ls = spec.style.get("path", "solid")
    for i, tr in enumerate(traces):
        color = f"C{i % 10}"
        line, = ax.plot(tr.x, tr.t, linestyle=ls, color=color, linewidth=1.1)
        line.set_gid("path")
        start, = ax.plot([tr.x[0]], [tr.t[0]], marker=".", color=color, linestyle="none")
        start.set_gid("start")
    by_kind: dict[str, list[tuple[float, float]]] = {}
    for entry in events.traces:
        for ev in entry.events:
            by_kind.setdefault(ev.kind, []).append((ev.x, ev.t))
    for kind in sorted(by_kind):
        pts = np.asarray(by_kind[kind])
        if len(pts) > _MAX_MARKERS:
            keep = np.unique(np.linspace(0, len(pts) - 1, _MAX_MARKERS).round().astype(int))
            pts = pts[keep]
        opts = _MARKERS.get(kind, {"marker": "d", "color": "k", "markerfacecolor": "none"})
        line, = ax.plot(pts[:, 0], pts[:, 1], linestyle="none", markersize=6,
                        label=kind, **opts)
        line.set_gid(f"events:{kind}")
    _set_limits(ax, spec, [tr.x for tr in traces], [tr.t for tr in traces])
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    if by_kind:
        ax.legend(loc="best")
    return fig


def _build_dyads(spec: FigureSpec) -> Figure:
    pairs = [(spec.inputs[i], spec.inputs[i + 1]) for i in range(0, len(spec.inputs), 2)]
    fig, ax = _new_axes(spec.figure, (6.0, 6.0))
    xs: list[np.ndarray] = []
    ys: list[np.ndarray] = []
    for trace_path, transport_path in pairs:
        tr = artifacts.read_trace(trace_path)
        tp = artifacts.read_transport(transport_path)
        line, = ax.plot(tr.x, tr.t, linestyle=spec.style.get("path", "solid"),
                        color="0.45", linewidth=1.0)
        line.set_gid("path")
        start, = ax.plot([tr.x[0]], [tr.t[0]], marker="o", color="k",
                         linestyle="none", markersize=4)
        start.set_gid("start")
        xs.append(tr.x)
        ys.append(tr.t)
        span = max(float(np.ptp(tr.x)), float(np.ptp(tr.t)))
        alen = _ARROW_FRACTION * (span if span > 0 else 1.0)
        idx = np.unique(np.linspace(0, len(tp.x) - 1, _ARROW_STATIONS).round().astype(int))
        # frame columns are (t, x) components; the plot is x horizontal, t vertical
        for t_col, x_col, color, gid in ((0, 1, "C3", "dyad:e_time"),
                                         (2, 3, "C0", "dyad:e_space")):
            u = tp.frames[idx, x_col]
            v = tp.frames[idx, t_col]
            q = ax.quiver(tp.x[idx], tp.t[idx], u, v, angles="xy",
                          scale_units="xy", scale=1.0 / alen, color=color,
                          width=0.004, zorder=3)
            q.set_gid(gid)
            xs.append(tp.x[idx] + alen * u)
            ys.append(tp.t[idx] + alen * v)
    _set_limits(ax, spec, xs, ys)
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    return fig


def build_figure(spec: FigureSpec) -> Figure:
    """Assemble one figure in memory; raises SchemaError on bad inputs."""
    if spec.figure in VELOCITY_COLUMN:
        return _build_scan_overlay(spec)
    if spec.figure == 3:
        return _build_dyads(spec)
    return _build_paths(spec)


def render(spec: FigureSpec, out_dir: Path) -> tuple[Path, Path]:
    """Render spec to out_dir/figN.png and .svg; nothing is written on failure."""
    fig = build_figure(spec)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    with matplotlib.rc_context({"svg.hashsalt": "kgfigures"}):
        for ext, kwargs in (("png", {"dpi": 150}), ("svg", {"metadata": {"Date": None}})):
            final = out_dir / f"fig{spec.figure}.{ext}"
            tmp = out_dir / f".fig{spec.figure}.{ext}.tmp"
            fig.savefig(tmp, format=ext, **kwargs)
            os.replace(tmp, final)
            written.append(final)
    return written[0], written[1]
