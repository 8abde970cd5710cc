"""Figure assembly: series content, axis ranges, gaps, arrows, failure modes."""

import json

import numpy as np
import pytest

from kgfigures import STYLE_SCAN, FigureSpec, SchemaError, build_figure, render, spec_for

S0_ROOTS = (1.898, 2.086)


def _lines(fig, gid):
    return [line for line in fig.axes[0].lines if line.get_gid() == gid]


def _interior_gaps(x, y):
    """x-intervals bridging maximal NaN runs that have finite neighbors."""
    nan = np.isnan(y)
    gaps = []
    i = 0
    while i < len(y):
        if not nan[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(y) and nan[j + 1]:
            j += 1
        if i > 0 and j < len(y) - 1:
            gaps.append((x[i - 1], x[j + 1]))
        i = j + 1
    return gaps


def test_scan_overlay_series_and_styles(inputs_dir):
    fig = build_figure(spec_for(1, inputs_dir))
    styles = {gid: _lines(fig, gid)[0].get_linestyle()
              for gid in ("density", "velocity", "s0")}
    assert styles == {"density": ":", "velocity": "-", "s0": "--"}
    labels = [line.get_label() for gid in ("density", "velocity", "s0")
              for line in _lines(fig, gid)]
    assert labels == ["|phi|^2", "v (de Broglie)", "S_0"]


def test_fig1_velocity_gap_at_each_root(inputs_dir):
    fig = build_figure(spec_for(1, inputs_dir))
    line = _lines(fig, "velocity")[0]
    x, y = line.get_xdata(), line.get_ydata()
    gaps = _interior_gaps(x, y)
    assert len(gaps) == 2
    for root, (lo, hi) in zip(S0_ROOTS, gaps):
        assert lo < root < hi
        assert hi - lo < 0.05
    between = (x > gaps[0][1]) & (x < gaps[1][0])
    assert between.any()
    assert np.isfinite(y[between]).all()
    assert np.abs(y[between]).max() > 1.0  # superluminal stretch is drawn


def test_fig4_velocity_gapped_at_same_roots(inputs_dir):
    fig = build_figure(spec_for(4, inputs_dir))
    line = _lines(fig, "velocity")[0]
    gaps = _interior_gaps(line.get_xdata(), line.get_ydata())
    assert len(gaps) == 2
    for root, (lo, hi) in zip(S0_ROOTS, gaps):
        assert lo < root < hi


def test_fig6_velocity_continuous_and_subluminal(inputs_dir):
    fig = build_figure(spec_for(6, inputs_dir))
    line = _lines(fig, "velocity")[0]
    y = line.get_ydata()
    assert not _interior_gaps(line.get_xdata(), y)
    assert np.nanmax(np.abs(y)) < 1.0


def test_axis_limits_are_padded_extent(inputs_dir):
    fig = build_figure(spec_for(1, inputs_dir))
    ax = fig.axes[0]
    series = [_lines(fig, gid)[0] for gid in ("density", "velocity", "s0")]
    xs = np.concatenate([line.get_xdata() for line in series])
    ys = np.concatenate([line.get_ydata() for line in series])
    ys = ys[np.isfinite(ys)]
    for (lo, hi), vals in ((ax.get_xlim(), xs), (ax.get_ylim(), ys)):
        pad = 0.05 * (vals.max() - vals.min())
        assert lo == pytest.approx(vals.min() - pad, rel=1e-9)
        assert hi == pytest.approx(vals.max() + pad, rel=1e-9)


def test_axes_override(inputs_dir):
    base = spec_for(1, inputs_dir)
    spec = FigureSpec(1, base.inputs, STYLE_SCAN, axes=(0.5, 2.5, -3.0, 3.0))
    fig = build_figure(spec)
    assert fig.axes[0].get_xlim() == (0.5, 2.5)
    assert fig.axes[0].get_ylim() == (-3.0, 3.0)


def test_fig2_paths_and_event_markers(inputs_dir):
    fig = build_figure(spec_for(2, inputs_dir))
    paths = _lines(fig, "path")
    assert len(paths) == 5
    assert any(np.any(np.diff(line.get_ydata()) < 0) for line in paths)
    markers = _lines(fig, "events:SelfIntersection")
    assert markers and markers[0].get_xdata().size >= 1
    events = json.loads((inputs_dir / "fig2" / "events.json").read_text())
    recorded = [(ev["x"], ev["t"]) for entry in events["traces"]
                for ev in entry["events"] if ev["kind"] == "SelfIntersection"]
    plotted = list(zip(markers[0].get_xdata(), markers[0].get_ydata()))
    # dense marker clouds are evenly subsampled, never invented
    assert len(plotted) == min(400, len(recorded))
    assert set(plotted) <= set(recorded)
    assert plotted[0] == recorded[0] and plotted[-1] == recorded[-1]


def test_fig5_paths_monotone_no_self_intersections(inputs_dir):
    fig = build_figure(spec_for(5, inputs_dir))
    paths = _lines(fig, "path")
    assert len(paths) == 5
    for line in paths:
        assert np.all(np.diff(line.get_ydata()) >= 0)
    assert not _lines(fig, "events:SelfIntersection")


def test_fig7_paths_drawn_complete(inputs_dir):
    fig = build_figure(spec_for(7, inputs_dir))
    paths = _lines(fig, "path")
    assert len(paths) == 5
    for line in paths:
        assert np.all(np.isfinite(line.get_xydata()))
        assert np.all(np.diff(line.get_ydata()) > 0)


def test_fig3_dyad_arrows(inputs_dir):
    fig = build_figure(spec_for(3, inputs_dir))
    ax = fig.axes[0]
    quivers = {c.get_gid(): c for c in ax.collections
               if c.get_gid() and c.get_gid().startswith("dyad:")}
    assert sorted(quivers) == ["dyad:e_space", "dyad:e_time"]
    e_time, e_space = quivers["dyad:e_time"], quivers["dyad:e_space"]
    # station 0 carries the seed dyad: e_time = (1, 0), e_space = (0, 1) in (t, x)
    assert (e_time.U[0], e_time.V[0]) == (0.0, 1.0)
    assert (e_space.U[0], e_space.V[0]) == (1.0, 0.0)
    assert e_time.U.size == e_space.U.size > 10
    assert np.all(np.isfinite(e_time.U)) and np.all(np.isfinite(e_time.V))
    path = _lines(fig, "path")[0]
    verts = path.get_xydata()
    for base in np.asarray(e_time.get_offsets()):
        assert np.min(np.hypot(*(verts - base).T)) == 0.0


def test_rerender_yields_identical_series(inputs_dir):
    for figure in (1, 2):
        first = build_figure(spec_for(figure, inputs_dir))
        second = build_figure(spec_for(figure, inputs_dir))
        a, b = first.axes[0].lines, second.axes[0].lines
        assert len(a) == len(b)
        for la, lb in zip(a, b):
            assert la.get_gid() == lb.get_gid()
            assert np.array_equal(la.get_xydata(), lb.get_xydata(), equal_nan=True)


def test_render_writes_png_and_svg(inputs_dir, tmp_path):
    png, svg = render(spec_for(6, inputs_dir), tmp_path / "img")
    assert png.name == "fig6.png" and png.stat().st_size > 1000
    assert svg.name == "fig6.svg" and svg.stat().st_size > 1000
    assert sorted(p.name for p in (tmp_path / "img").iterdir()) == ["fig6.png", "fig6.svg"]


def test_empty_trajectory_errors_without_image(tmp_path):
    src = tmp_path / "in"
    src.mkdir()
    (src / "trace_00.csv").write_text("tau,x,t,dtdtau,dxdtau\n")
    (src / "events.json").write_text(json.dumps({
        "law": "debroglie",
        "failures": 0,
        "traces": [{"ic": [1.0, 0.0], "file": "trace_00.csv",
                    "stop_reason": "complete", "events": [], "error": None}],
    }))
    out = tmp_path / "out"
    with pytest.raises(SchemaError, match="trace_00"):
        render(spec_for(2, src), out)
    assert not out.exists()


def test_scan_schema_mismatch_no_image(inputs_dir, tmp_path):
    src = tmp_path / "in"
    src.mkdir()
    text = (inputs_dir / "fig1" / "scan.csv").read_text()
    (src / "scan.csv").write_text(text.replace("re_phi", "rephi", 1))
    out = tmp_path / "out"
    with pytest.raises(SchemaError, match="header"):
        render(spec_for(1, src), out)
    assert not out.exists()


def test_spec_for_missing_inputs(tmp_path):
    with pytest.raises(SchemaError, match="scan.csv"):
        spec_for(1, tmp_path)
    with pytest.raises(SchemaError, match="trace"):
        spec_for(2, tmp_path)
    with pytest.raises(SchemaError, match="transport"):
        spec_for(3, tmp_path)


def test_spec_validation():
    with pytest.raises(ValueError, match="figure id"):
        spec_for(9, None)
    with pytest.raises(SchemaError, match="no input files"):
        FigureSpec(1, ())


def test_spec_for_flat_run_directory(inputs_dir):
    spec = spec_for(4, inputs_dir / "fig4")
    assert spec.inputs[0] == inputs_dir / "fig4" / "scan.csv"
    assert build_figure(spec) is not None
