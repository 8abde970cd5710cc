"""Command-line front end: scans, trajectory batches, diagnostics, classical runs.

Commands
    scan       field/velocity table across the box at fixed t
    trace      trajectory batch from ICs or a figure preset
    diagnose   JSON pathology report (roots, intervals, flux)
    classical  point-particle path in an external potential

Every run writes deterministic artifacts into --out: floats are formatted
with repr() (shortest round-trip decimal), cells that have no defined value
are left empty (never NaN text), CSV is UTF-8 with LF endings, and the
resolved configuration is saved alongside as config.json so a run can be
reproduced from its artifacts alone.

Exit codes: 0 success, 1 configuration error, 2 runtime degeneracy abort
(every requested computation failed; isolated per-IC failures still exit 0).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classical import (
    ClassicalState,
    ConstantElectric,
    Tabulated,
    Zero,
    integrate_classical,
)
from .errors import ConstraintViolationError, KgpilotError, PoleError
from .guidance import (
    VelocityLaw,
    negative_mass_intervals,
    negativity_scan,
    roots_of_s0,
    superluminal_scan,
    v_debroglie,
    v_modified,
)
from .kgfield import (
    BoxConfig,
    FieldSample,
    ModeSpec,
    WaveState,
    default_eps_node,
    eval_field,
    eval_field_grid,
    polar,
)
from .stressenergy import eigen_flow, stress_tensor
from .trajectories import (
    DyadFrame,
    InitialCondition,
    IntegratorConfig,
    fermi_transport,
    gauss_flux,
    integrate,
)

__all__ = ["RunConfig", "cmd_scan", "cmd_trace", "cmd_diagnose", "cmd_classical", "main"]

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
CLASSICAL_COLUMNS = ["X", "x", "p", "H", "zeta"]

_AMP = 2.0**-0.5
_FIG2_ICS = ((1.9, -0.04), (1.9, -0.1), (2.4, -0.4), (2.3, -0.4), (2.0, -0.4))
_FIG7_ICS = ((1.94, -0.4), (2.0, -0.4), (2.14, -0.4), (2.3, -0.4), (2.4, -0.4))

# Figure presets bundle the two-mode reference run for each figure; the
# preset must match the invoked command (scan presets cannot drive trace).
PRESETS: dict[str, dict] = {
    "fig1": {"command": "scan", "law": "debroglie", "t": 0.1},
    "fig2": {"command": "trace", "law": "debroglie", "ics": _FIG2_ICS},
    "fig3": {
        "command": "trace",
        "law": "debroglie",
        "ics": ((1.9, -0.04),),
        "transport": True,
        "tau_span": 1.2,
    },
    "fig4": {"command": "scan", "law": "modified", "t": 0.1},
    "fig5": {"command": "trace", "law": "modified", "ics": _FIG2_ICS},
    "fig6": {"command": "scan", "law": "energy", "t": 0.1},
    "fig7": {"command": "trace", "law": "energy", "ics": _FIG7_ICS},
}


class ConfigError(KgpilotError):
    """Bad flags, bad config file, or inconsistent values; exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved, serializable description of one CLI run."""

    command: str
    out: str
    L: float = math.pi
    m0: float = 1.0
    modes: tuple[tuple[int, float, float], ...] = ((1, _AMP, 0.0), (2, _AMP, 0.0))
    law: str = "debroglie"
    t: float = 0.1
    x_min: float = 0.0
    x_max: float | None = None
    grid_n: int | None = None
    ics: tuple[tuple[float, float], ...] = ()
    tau_span: float = 4.0
    step: float = 1e-3
    fmt: str = "csv"
    preset: str | None = None
    transport: bool = False
    rect: tuple[float, float, float, float] = (1.5, 2.5, 0.0, 0.2)
    edge_n: int = 2000
    potential: str = "zero"
    efield: float = 1.0
    x0: float = 0.0
    p0: float = 0.0
    zeta: int = 1
    charge: float = 1.0
    mass: float = 1.0
    x_span: float = 5.0
    conjugate: bool = False
    tab_xs: tuple[float, ...] | None = None
    tab_a: tuple[float, ...] | None = None
    tab_da: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def state(self) -> WaveState:
        box = BoxConfig(self.L, self.m0)
        modes = tuple(ModeSpec(int(n), complex(re, im)) for n, re, im in self.modes)
        return WaveState(box, modes)


# ---------------------------------------------------------------------------
# Config assembly: defaults < config file < preset < explicit flags


def _parse_modes(text: str) -> tuple[tuple[int, float, float], ...]:
    out = []
    for token in text.split(";"):
        token = token.strip()
        if not token:
            continue
        try:
            head, tail = token.split(":")
            parts = [float(v) for v in tail.split(",")]
            if len(parts) == 1:
                parts.append(0.0)
            if len(parts) != 2:
                raise ValueError
            out.append((int(head), parts[0], parts[1]))
        except ValueError:
            raise ConfigError(f"bad mode token {token!r}, expected n:re,im") from None
    if not out:
        raise ConfigError("empty --modes")
    return tuple(out)


def _parse_pairs(text: str, what: str) -> tuple[tuple[float, float], ...]:
    out = []
    for token in text.split(";"):
        token = token.strip()
        if not token:
            continue
        try:
            a, b = (float(v) for v in token.split(","))
        except ValueError:
            raise ConfigError(f"bad {what} token {token!r}, expected x,t") from None
        out.append((a, b))
    if not out:
        raise ConfigError(f"empty {what} list")
    return tuple(out)


def _parse_rect(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        vals = ()
    if len(vals) != 4:
        raise ConfigError(f"bad --rect {text!r}, expected x_lo,x_hi,t_lo,t_hi")
    return vals


def _normalize(key: str, value):
    """Coerce a raw flag/file value into the RunConfig field shape."""
    if value is None:
        return None
    if key == "modes":
        if isinstance(value, str):
            return _parse_modes(value)
        return tuple((int(n), float(re), float(im)) for n, re, im in value)
    if key == "ics":
        if isinstance(value, str):
            return _parse_pairs(value, "--ic")
        return tuple((float(a), float(b)) for a, b in value)
    if key == "rect":
        if isinstance(value, str):
            return _parse_rect(value)
        vals = tuple(float(v) for v in value)
        if len(vals) != 4:
            raise ConfigError(f"rect needs 4 numbers, got {len(vals)}")
        return vals
    if key in ("tab_xs", "tab_a", "tab_da"):
        return tuple(float(v) for v in value)
    return value


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def build_config(command: str, args: argparse.Namespace) -> RunConfig:
    field_names = {f.name for f in dataclasses.fields(RunConfig)}
    merged = {
        f.name: None if f.default is dataclasses.MISSING else f.default
        for f in dataclasses.fields(RunConfig)
    }
    merged["command"] = command

    if args.config:
        for key, value in _load_config_file(args.config).items():
            if key not in field_names:
                raise ConfigError(f"unknown config key {key!r}")
            if key == "command":
                continue
            merged[key] = _normalize(key, value)

    preset = getattr(args, "preset", None) or merged.get("preset")
    if preset:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}")
        spec = PRESETS[preset]
        if spec["command"] != command:
            raise ConfigError(f"preset {preset!r} belongs to the {spec['command']!r} command")
        merged["preset"] = preset
        for key, value in spec.items():
            if key != "command":
                merged[key] = _normalize(key, value)

    for key in field_names:
        if key in ("command", "preset"):
            continue
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = _normalize(key, value)

    if merged["x_max"] is None:
        merged["x_max"] = merged["L"]
    if merged["grid_n"] is None:
        merged["grid_n"] = 4096 if command == "diagnose" else 1024

    cfg = RunConfig(**merged)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    try:
        if cfg.command in ("scan", "trace", "diagnose"):
            cfg.state()
            VelocityLaw.parse(cfg.law)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if not cfg.out:
        raise ConfigError("--out is required")
    if cfg.fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {cfg.fmt!r}")
    if not math.isfinite(cfg.t):
        raise ConfigError(f"bad time {cfg.t!r}")
    if not (0.0 <= cfg.x_min < cfg.x_max <= cfg.L):
        raise ConfigError(f"bad grid bounds [{cfg.x_min!r}, {cfg.x_max!r}] for box length {cfg.L!r}")
    if cfg.grid_n < 2:
        raise ConfigError("grid-n must be at least 2")
    if not (cfg.step > 0):
        raise ConfigError("step must be positive")
    if not (cfg.tau_span > 0):
        raise ConfigError("tau-span must be positive")
    if cfg.command == "trace" and not cfg.ics:
        raise ConfigError("trace needs --ic or a trace preset")
    if cfg.command == "diagnose":
        x_lo, x_hi, t_lo, t_hi = cfg.rect
        if not (0.0 <= x_lo < x_hi <= cfg.L and t_lo < t_hi):
            raise ConfigError(f"bad rectangle {cfg.rect!r}")
        if cfg.edge_n < 3:
            raise ConfigError("edge-n must be at least 3")
    if cfg.command == "classical":
        if cfg.potential not in ("zero", "efield", "tabulated"):
            raise ConfigError(f"unknown potential {cfg.potential!r}")
        if cfg.potential == "tabulated" and not (cfg.tab_xs and cfg.tab_a and cfg.tab_da):
            raise ConfigError("tabulated potential needs tab_xs/tab_a/tab_da in the config file")
        if cfg.zeta not in (-1, 1):
            raise ConfigError(f"zeta must be +1 or -1, got {cfg.zeta!r}")
        if cfg.mass < 0:
            raise ConfigError("mass must be non-negative")
        if not (cfg.x_span > 0):
            raise ConfigError("x-span must be positive")


# ---------------------------------------------------------------------------
# Deterministic serialization


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_table(path: Path, columns: list[str], rows: list[list]) -> None:
    if path.suffix == ".json":
        payload = {"columns": columns, "rows": [[None if v is None else v for v in r] for r in rows]}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(columns)]
        lines.extend(",".join(_cell(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    path.write_text(text, encoding="utf-8", newline="\n")


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="\n")


def _prepare_out(cfg: RunConfig) -> Path:
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_json(outdir / "config.json", cfg.to_dict())
    return outdir


# ---------------------------------------------------------------------------
# scan


def _scan_rows(cfg: RunConfig, state: WaveState) -> list[list]:
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.grid_n)
    phi, d_t, d_x, d_tt, d_xx, d_tx = eval_field_grid(state, xs, cfg.t)
    eps_node = default_eps_node(state)
    m0 = state.box.rest_mass
    weighted_s0 = (d_t * np.conj(phi)).imag
    j0_col = -weighted_s0 / m0

    rows: list[list] = []
    flags: list[set[str]] = []
    node_mask = np.abs(phi) < eps_node
    for i, x in enumerate(xs):
        f: set[str] = set()
        re_phi, im_phi = float(phi[i].real), float(phi[i].imag)
        dens = float(abs(phi[i])) ** 2
        if node_mask[i]:
            f.add("node")
            rows.append([float(x), re_phi, im_phi, dens, None, None, 0.0, None, None, None, None, f])
            flags.append(f)
            continue
        sample = FieldSample(
            float(x), cfg.t, complex(phi[i]), complex(d_t[i]), complex(d_x[i]),
            complex(d_tt[i]), complex(d_xx[i]), complex(d_tx[i]),
        )
        p = polar(sample, eps_node)
        v_db: float | None
        v_mod: float | None
        try:
            v_db = v_debroglie(p)
            v_mod = v_modified(p)
        except PoleError:
            v_db = v_mod = None
            f.add("pole")
        T = stress_tensor(p, m0)
        pair = eigen_flow(T)
        v_en: float | None
        if pair.W_time is None:
            v_en = None
            f.add("degenerate")
        elif pair.degenerate:
            v_en = 0.0
            f.add("degenerate")
        else:
            v_en = pair.W_time[1] / pair.W_time[0]
        eff = m0 * m0 + p.box_r_over_r
        rows.append(
            [float(x), re_phi, im_phi, dens, p.S_0, p.S_1, float(j0_col[i]), v_db, v_mod, v_en, eff, f]
        )
        flags.append(f)

    # Rows adjacent to an S0 sign change sit next to a velocity pole: flag
    # both and blank the diverging velocity cells so plots show a gap.
    sign = np.sign(weighted_s0)
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
        for k in (i, i + 1):
            if "node" in flags[k]:
                continue
            flags[k].add("pole")
            rows[k][7] = rows[k][8] = None
    for row, f in zip(rows, flags):
        row[11] = ";".join(sorted(f))
    return rows


def cmd_scan(cfg: RunConfig) -> int:
    state = cfg.state()
    rows = _scan_rows(cfg, state)
    outdir = _prepare_out(cfg)
    path = outdir / f"scan.{cfg.fmt}"
    _write_table(path, SCAN_COLUMNS, rows)
    print(f"scan: wrote {path} ({len(rows)} rows)")
    return 0


# ---------------------------------------------------------------------------
# trace


def cmd_trace(cfg: RunConfig) -> int:
    state = cfg.state()
    law = VelocityLaw.parse(cfg.law)
    icfg = IntegratorConfig(h=cfg.step, tau_span=cfg.tau_span)
    outdir = _prepare_out(cfg)
    entries = []
    failures = 0
    for i, (x0, t0) in enumerate(cfg.ics):
        entry: dict = {
            "ic": [x0, t0],
            "law": law.value,
            "file": None,
            "stop_reason": None,
            "events": [],
            "error": None,
        }
        try:
            rec = integrate(state, law, InitialCondition(x0, t0), icfg)
        except (KgpilotError, ValueError) as exc:
            entry["error"] = str(exc)
            failures += 1
            print(f"trace[{i}] failed: {exc}")
        else:
            name = f"trace_{i:02d}.{cfg.fmt}"
            rows = [[float(v) for v in row] for row in rec.samples]
            _write_table(outdir / name, TRACE_COLUMNS, rows)
            entry["file"] = name
            entry["stop_reason"] = rec.stop_reason
            entry["events"] = [
                {"kind": e.kind, "tau": e.tau, "x": e.location[0], "t": e.location[1]}
                for e in rec.events
            ]
            print(f"trace[{i}] {name}: stop={rec.stop_reason} events={len(rec.events)}")
            if cfg.transport:
                try:
                    frames = fermi_transport(rec, DyadFrame((1.0, 0.0), (0.0, 1.0)))
                except (KgpilotError, ValueError) as exc:
                    entry["transport_error"] = str(exc)
                    print(f"trace[{i}] transport failed: {exc}")
                else:
                    tname = f"transport_{i:02d}.{cfg.fmt}"
                    trows = [
                        [float(rec.tau[k]), float(rec.x[k]), float(rec.t[k]),
                         fr.e_time[0], fr.e_time[1], fr.e_space[0], fr.e_space[1]]
                        for k, fr in enumerate(frames)
                    ]
                    _write_table(outdir / tname, TRANSPORT_COLUMNS, trows)
                    entry["transport_file"] = tname
        entries.append(entry)
    _write_json(outdir / "events.json", {"law": law.value, "traces": entries, "failures": failures})
    print(f"trace: {len(cfg.ics) - failures}/{len(cfg.ics)} trajectories written to {outdir}")
    if failures == len(cfg.ics):
        return 2
    return 0


# ---------------------------------------------------------------------------
# diagnose


def _degenerate_points(cfg: RunConfig, state: WaveState) -> list[float]:
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.grid_n + 2)[1:-1]
    phi, d_t, d_x, d_tt, d_xx, d_tx = eval_field_grid(state, xs, cfg.t)
    eps_node = default_eps_node(state)
    m0 = state.box.rest_mass
    points = []
    for i, x in enumerate(xs):
        if abs(phi[i]) < eps_node:
            continue
        sample = FieldSample(
            float(x), cfg.t, complex(phi[i]), complex(d_t[i]), complex(d_x[i]),
            complex(d_tt[i]), complex(d_xx[i]), complex(d_tx[i]),
        )
        pair = eigen_flow(stress_tensor(polar(sample, eps_node), m0))
        if pair.degenerate:
            points.append(float(x))
    return points


def cmd_diagnose(cfg: RunConfig) -> int:
    state = cfg.state()
    interval = (cfg.x_min, cfg.x_max) if (cfg.x_min, cfg.x_max) != (0.0, cfg.L) else None
    roots = roots_of_s0(state, cfg.t, interval=interval, grid_n=cfg.grid_n)
    root_entries = []
    for r in roots:
        s = eval_field(state, r, cfg.t)
        root_entries.append({"x": r, "residual": abs((s.d_t * s.phi.conjugate()).imag)})
    report = {
        "box": {"L": cfg.L, "m0": cfg.m0},
        "modes": [list(m) for m in cfg.modes],
        "t": cfg.t,
        "s0_roots": root_entries,
        "superluminal_intervals": [list(iv) for iv in superluminal_scan(state, cfg.t, interval, cfg.grid_n)],
        "j0_negative_intervals": [list(iv) for iv in negativity_scan(state, cfg.t, interval, cfg.grid_n)],
        "eff_mass_negative_intervals": [
            list(iv) for iv in negative_mass_intervals(state, cfg.t, interval, cfg.grid_n)
        ],
        "degenerate_points": _degenerate_points(cfg, state),
        "gauss_flux": {"rect": list(cfg.rect), "edge_n": cfg.edge_n, "value": gauss_flux(state, cfg.rect, cfg.edge_n)},
    }
    outdir = _prepare_out(cfg)
    path = outdir / "report.json"
    _write_json(path, report)
    print(f"diagnose: wrote {path} ({len(roots)} S0 roots)")
    return 0


# ---------------------------------------------------------------------------
# classical


def _potential(cfg: RunConfig):
    if cfg.potential == "zero":
        return Zero()
    if cfg.potential == "efield":
        return ConstantElectric(cfg.efield)
    return Tabulated(cfg.tab_xs, cfg.tab_a, cfg.tab_da)


def _classical_rows(path, zeta: int) -> list[list]:
    return [
        [float(X), float(x), float(p), float(H), zeta]
        for X, x, p, H in zip(path.X, path.x, path.p, path.H)
    ]


def cmd_classical(cfg: RunConfig) -> int:
    pot = _potential(cfg)
    s0 = ClassicalState(cfg.x0, cfg.p0, cfg.zeta, 0.0, cfg.charge, cfg.mass)
    outdir = _prepare_out(cfg)
    try:
        path = integrate_classical(s0, pot, cfg.x_span, cfg.step)
    except ConstraintViolationError as exc:
        print(f"classical: aborted: {exc}", file=sys.stderr)
        return 2
    fname = outdir / f"classical.{cfg.fmt}"
    _write_table(fname, CLASSICAL_COLUMNS, _classical_rows(path, s0.zeta))
    print(f"classical: wrote {fname} (max shell drift {path.max_shell_drift!r})")
    if cfg.conjugate:
        flipped = dataclasses.replace(s0, zeta=-s0.zeta, charge=-s0.charge)
        try:
            path_b = integrate_classical(flipped, pot, cfg.x_span, cfg.step)
        except ConstraintViolationError as exc:
            print(f"classical: conjugate run aborted: {exc}", file=sys.stderr)
            return 2
        cname = outdir / f"classical_conj.{cfg.fmt}"
        _write_table(cname, CLASSICAL_COLUMNS, _classical_rows(path_b, flipped.zeta))
        dev = max(
            float(np.max(np.abs(path.x - path_b.x))),
            float(np.max(np.abs(path.p - path_b.p))),
            float(np.max(np.abs(path.H - path_b.H))),
        )
        _write_json(
            outdir / "conjugation.json",
            {"max_deviation": dev, "agrees": dev < 1e-12, "tolerance": 1e-12},
        )
        print(f"classical: conjugate deviation {dev!r}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 for any usage problem
        raise ConfigError(message)


def _add_shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--L", type=float, help="box length (default pi)")
    p.add_argument("--m0", type=float, help="rest mass (default 1)")
    p.add_argument("--modes", help='mode list "n:re,im[;n:re,im...]"')
    p.add_argument("--t", type=float, help="scan/diagnose time (default 0.1)")
    p.add_argument("--x-min", type=float, dest="x_min")
    p.add_argument("--x-max", type=float, dest="x_max")
    p.add_argument("--grid-n", type=int, dest="grid_n")
    p.add_argument("--law", choices=["debroglie", "modified", "energy"])
    p.add_argument("--ic", dest="ics", help='initial conditions "x0,t0[;x0,t0...]"')
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--tau-span", type=float, dest="tau_span")
    p.add_argument("--step", type=float)
    p.add_argument("--out", help="output directory")
    p.add_argument("--format", dest="fmt", choices=["csv", "json"])
    p.add_argument("--config", help="JSON config file; flags override it")


def _build_parser() -> _Parser:
    parser = _Parser(prog="kgpilot", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, desc in (
        ("scan", "field and velocity table across the box at fixed t"),
        ("trace", "trajectory batch from --ic or a figure preset"),
        ("diagnose", "JSON report of roots, pathology intervals and flux"),
        ("classical", "point-particle run in an external potential"),
    ):
        p = sub.add_parser(name, help=desc)
        _add_shared(p)
        if name == "trace":
            p.add_argument("--transport", action="store_true", default=None,
                           help="also write Fermi-Walker dyad frames per trajectory")
        if name == "diagnose":
            p.add_argument("--rect", help='Gauss rectangle "x_lo,x_hi,t_lo,t_hi"')
            p.add_argument("--edge-n", type=int, dest="edge_n")
        if name == "classical":
            p.add_argument("--potential", choices=["zero", "efield", "tabulated"])
            p.add_argument("--efield", type=float, help="field strength for --potential efield")
            p.add_argument("--x0", type=float)
            p.add_argument("--p0", type=float)
            p.add_argument("--zeta", type=int, choices=[-1, 1])
            p.add_argument("--charge", type=float)
            p.add_argument("--mass", type=float)
            p.add_argument("--x-span", type=float, dest="x_span")
            p.add_argument("--conjugate", action="store_true", default=None,
                           help="also run the (-zeta, -e) path and report the deviation")
    return parser


_COMMANDS = {
    "scan": cmd_scan,
    "trace": cmd_trace,
    "diagnose": cmd_diagnose,
    "classical": cmd_classical,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = build_config(args.command, args)
        return _COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"kgpilot: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
