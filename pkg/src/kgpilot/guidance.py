"""The three guidance laws and pointwise pathology diagnostics.

Velocity laws:

    debroglie   v = S_1 / (-S_0)      unbounded; poles where S_0 = 0
    modified    v = S_1 / |S_0|       equal to debroglie wherever S_0 < 0
    energy      v = W^1/W^0           time-like stress eigenvector, |v| < 1

The parametrized flow fields integrate as d(t, x)/dtau = (-S_0, S_1) for
debroglie and (|S_0|, S_1) for modified; these are the contravariant
components of -S^mu under the (+,-) signature, i.e. the streamline field of
the conserved current. The energy law is integrated in coordinate time with
slope v.

Scan helpers locate the pathology regions: S_0 roots (velocity poles),
J0 < 0 windows, superluminal windows and negative effective-mass windows,
each grid-scanned and bisection-refined.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateFlowError, NearNodeError, PoleError
from .kgfield import PolarSample, WaveState, default_eps_node, eval_field, eval_field_grid, polar
from .stressenergy import stress_tensor, v_energy

__all__ = [
    "VelocityLaw",
    "FlowVector",
    "v_debroglie",
    "v_modified",
    "flow_field",
    "roots_of_s0",
    "negativity_scan",
    "superluminal_scan",
    "negative_mass_intervals",
]

# |S_0| below this is treated as a pole of the three-velocity laws.
EPS_POLE = 1e-9


class VelocityLaw(enum.Enum):
    DeBroglie = "debroglie"
    ModifiedAbs = "modified"
    EnergyFlow = "energy"

    @classmethod
    def parse(cls, token: str) -> "VelocityLaw":
        for law in cls:
            if law.value == token:
                return law
        raise ValueError(f"unknown law {token!r}; expected one of {[l.value for l in cls]}")


@dataclass(frozen=True)
class FlowVector:
    """Parametrized flow components (dt/dtau, dx/dtau).

    For EnergyFlow the parameter is coordinate time itself: dtau_t = 1 and
    dtau_x is the slope dx/dt.
    """

    dtau_t: float
    dtau_x: float


def v_debroglie(p: PolarSample, eps_pole: float = EPS_POLE) -> float:
    """Original de Broglie three-velocity S_1/(-S_0); poles at S_0 = 0."""
    if p.near_node:
        raise NearNodeError("velocity undefined near a node", (p.x, p.t))
    if abs(p.S_0) < eps_pole:
        raise PoleError("S0 vanishes, de Broglie velocity has a pole", (p.x, p.t))
    return p.S_1 / (-p.S_0)


def v_modified(p: PolarSample, eps_pole: float = EPS_POLE) -> float:
    """|S0|-modified three-velocity S_1/|S_0|; flips sign where S_0 > 0."""
    if p.near_node:
        raise NearNodeError("velocity undefined near a node", (p.x, p.t))
    if abs(p.S_0) < eps_pole:
        raise PoleError("S0 vanishes, modified velocity has a pole", (p.x, p.t))
    return p.S_1 / abs(p.S_0)


def flow_field(
    state: WaveState,
    law: VelocityLaw,
    x: float,
    t: float,
    eps_node: float | None = None,
) -> FlowVector:
    """Flow vector of the chosen law at (x, t); see module docstring."""
    if eps_node is None:
        eps_node = default_eps_node(state)
    p = polar(eval_field(state, x, t), eps_node)
    if p.near_node:
        raise NearNodeError("flow undefined near a node", (x, t))
    if law is VelocityLaw.DeBroglie:
        return FlowVector(-p.S_0, p.S_1)
    if law is VelocityLaw.ModifiedAbs:
        return FlowVector(abs(p.S_0), p.S_1)
    return FlowVector(1.0, v_energy(stress_tensor(p, state.box.rest_mass)))


def _bisect(f: Callable[[float], float], lo: float, hi: float, flo: float, xtol: float) -> float:
    """Sign-change bisection; assumes f(lo) and f(hi) have opposite signs."""
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _interior_grid(state: WaveState, interval: tuple[float, float] | None, grid_n: int) -> np.ndarray:
    L = state.box.length
    if interval is None:
        interval = (0.0, L)
    a, b = interval
    if not (0.0 <= a < b <= L):
        raise ValueError(f"scan interval {interval!r} outside the box (0, {L!r})")
    return np.linspace(a, b, grid_n + 2)[1:-1]


def _s0_weighted(state: WaveState, xs: np.ndarray, t: float) -> np.ndarray:
    """R^2 S_0 on a grid: same sign pattern as S_0, smooth through nodes."""
    phi, d_t, _, _, _, _ = eval_field_grid(state, xs, t)
    return (d_t * np.conj(phi)).imag


def roots_of_s0(
    state: WaveState,
    t: float,
    interval: tuple[float, float] | None = None,
    grid_n: int = 4096,
    xtol: float = 1e-10,
) -> list[float]:
    """Sign-change roots of S_0(x, t), bisection-refined to xtol, sorted.

    Scans R^2 S_0 (node-safe) and discards refined points that are amplitude
    nodes rather than genuine phase-gradient zeros.
    """
    xs = _interior_grid(state, interval, grid_n)
    g = _s0_weighted(state, xs, t)
    eps_node = default_eps_node(state)

    def f(x: float) -> float:
        s = eval_field(state, x, t)
        return (s.d_t * s.phi.conjugate()).imag

    roots = []
    for i in np.flatnonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0):
        r = _bisect(f, float(xs[i]), float(xs[i + 1]), float(g[i]), xtol)
        if abs(eval_field(state, r, t).phi) > eps_node:
            roots.append(r)
    return sorted(roots)


def _negative_runs(
    state: WaveState,
    t: float,
    interval: tuple[float, float] | None,
    grid_n: int,
    values: np.ndarray,
    xs: np.ndarray,
    f: Callable[[float], float],
    xtol: float = 1e-10,
) -> list[tuple[float, float]]:
    """Contiguous sub-intervals where a sampled function is negative.

    Interior endpoints are bisection-refined on f; runs touching the scan
    edges keep the edge as their endpoint.
    """
    neg = values < 0.0
    intervals: list[tuple[float, float]] = []
    i = 0
    n = len(xs)
    while i < n:
        if not neg[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and neg[j + 1]:
            j += 1
        if i > 0:
            lo = _bisect(f, float(xs[i - 1]), float(xs[i]), float(values[i - 1]), xtol)
        else:
            lo = float(xs[0])
        if j < n - 1:
            hi = _bisect(f, float(xs[j]), float(xs[j + 1]), float(values[j]), xtol)
        else:
            hi = float(xs[-1])
        intervals.append((lo, hi))
        i = j + 1
    return intervals


def negativity_scan(
    state: WaveState,
    t: float,
    interval: tuple[float, float] | None = None,
    grid_n: int = 4096,
) -> list[tuple[float, float]]:
    """Sub-intervals where J0 < 0 at time t; empty if none found."""
    m0 = state.box.rest_mass
    if m0 <= 0:
        raise ValueError("current normalization requires m0 > 0")
    xs = _interior_grid(state, interval, grid_n)
    jvals = -_s0_weighted(state, xs, t) / m0

    def f(x: float) -> float:
        s = eval_field(state, x, t)
        return -(s.d_t * s.phi.conjugate()).imag / m0

    return _negative_runs(state, t, interval, grid_n, jvals, xs, f)


def superluminal_scan(
    state: WaveState,
    t: float,
    interval: tuple[float, float] | None = None,
    grid_n: int = 4096,
) -> list[tuple[float, float]]:
    """Sub-intervals where |v_debroglie| > 1 at time t.

    Uses the node- and pole-safe criterion |R^2 S_1| - |R^2 S_0| > 0, which
    is continuous across the velocity poles.
    """
    xs = _interior_grid(state, interval, grid_n)
    phi, d_t, d_x, _, _, _ = eval_field_grid(state, xs, t)
    crit = np.abs((d_t * np.conj(phi)).imag) - np.abs((d_x * np.conj(phi)).imag)

    def f(x: float) -> float:
        s = eval_field(state, x, t)
        return abs((s.d_t * s.phi.conjugate()).imag) - abs((s.d_x * s.phi.conjugate()).imag)

    return _negative_runs(state, t, interval, grid_n, crit, xs, f)


def negative_mass_intervals(
    state: WaveState,
    t: float,
    interval: tuple[float, float] | None = None,
    grid_n: int = 4096,
) -> list[tuple[float, float]]:
    """Sub-intervals where the effective mass squared m0^2 + (box R)/R < 0."""
    xs = _interior_grid(state, interval, grid_n)
    eps_node = default_eps_node(state)
    phi, d_t, d_x, d_tt, d_xx, _ = eval_field_grid(state, xs, t)
    good = np.abs(phi) >= eps_node
    safe_phi = np.where(good, phi, 1.0)
    rt = d_t / safe_phi
    rx = d_x / safe_phi
    box = ((d_tt - d_xx) / safe_phi).real + rt.imag**2 - rx.imag**2
    vals = np.where(good, state.box.rest_mass**2 + box, math.inf)

    def f(x: float) -> float:
        from .kgfield import effective_mass_sq

        return effective_mass_sq(state, x, t)

    return _negative_runs(state, t, interval, grid_n, vals, xs, f)
