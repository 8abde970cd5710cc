"""Klein-Gordon superpositions in a 1D Dirichlet box.

A state is a finite sum of box eigenmodes

    Phi(x, t) = sum_n a_n sqrt(2/L) sin(n pi x / L) exp(-i w_n t),
    w_n = sqrt((n pi / L)^2 + m0^2),

in natural units (hbar = c = 1). Everything downstream (polar decomposition,
currents, residual checks) is evaluated from termwise-analytic derivatives;
finite differences appear only in the test oracles.

Index convention: metric signature (+,-), so for a covector V_mu the raised
components are V^0 = V_0 and V^1 = -V_1. The subscripted fields S_0, S_1,
P_0, P_1 below are the plain partial derivatives d_t and d_x of S and P.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NearNodeError

__all__ = [
    "BoxConfig",
    "ModeSpec",
    "WaveState",
    "FieldSample",
    "PolarSample",
    "omega",
    "eval_field",
    "eval_field_grid",
    "polar",
    "j0",
    "residuals",
    "sample_residuals",
    "effective_mass_sq",
    "default_eps_node",
]


@dataclass(frozen=True)
class BoxConfig:
    """Box geometry and particle mass: length L > 0, rest mass m0 >= 0."""

    length: float
    rest_mass: float

    def __post_init__(self) -> None:
        if not (self.length > 0):
            raise ValueError(f"box length must be positive, got {self.length!r}")
        if not (self.rest_mass >= 0):
            raise ValueError(f"rest mass must be non-negative, got {self.rest_mass!r}")


@dataclass(frozen=True)
class ModeSpec:
    """One box eigenmode: quantum number n >= 1 and a complex amplitude."""

    n: int
    amplitude: complex

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"mode number must be a positive integer, got {self.n!r}")
        if not (math.isfinite(self.amplitude.real) and math.isfinite(self.amplitude.imag)):
            raise ValueError(f"mode amplitude must be finite, got {self.amplitude!r}")


@dataclass(frozen=True)
class WaveState:
    """A superposition of distinct box modes (the field Phi)."""

    box: BoxConfig
    modes: tuple[ModeSpec, ...]

    def __post_init__(self) -> None:
        modes = tuple(self.modes)
        object.__setattr__(self, "modes", modes)
        if not modes:
            raise ValueError("state needs at least one mode")
        ns = [m.n for m in modes]
        if len(set(ns)) != len(ns):
            raise ValueError(f"mode numbers must be distinct, got {ns}")
        # Per-mode scalars (k_n, w_n, a_n*sqrt(2/L)) for the pointwise
        # evaluator; the mode count is small, so plain complex arithmetic
        # beats vectorizing over it by a wide margin.
        norm = math.sqrt(2.0 / self.box.length)
        terms = tuple(
            (
                m.n * math.pi / self.box.length,
                math.sqrt((m.n * math.pi / self.box.length) ** 2 + self.box.rest_mass**2),
                complex(m.amplitude) * norm,
            )
            for m in modes
        )
        object.__setattr__(self, "_terms", terms)

    def amplitude_scale(self) -> float:
        """Upper bound on |Phi| anywhere: sqrt(2/L) * sum |a_n|."""
        norm = math.sqrt(2.0 / self.box.length)
        return norm * sum(abs(m.amplitude) for m in self.modes)

    def mode_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(wavenumbers k_n, frequencies w_n, scaled amplitudes a_n*sqrt(2/L)).

        Built once per state and cached; callers must not mutate the arrays.
        """
        cached = self.__dict__.get("_arrays")
        if cached is None:
            ks = np.array([k for k, _, _ in self._terms])
            oms = np.array([om for _, om, _ in self._terms])
            amps = np.array([a for _, _, a in self._terms], dtype=complex)
            cached = (ks, oms, amps)
            object.__setattr__(self, "_arrays", cached)
        return cached


@dataclass(frozen=True)
class FieldSample:
    """Phi and its first/second partials at one space-time point."""

    x: float
    t: float
    phi: complex
    d_t: complex
    d_x: complex
    d_tt: complex
    d_xx: complex
    d_tx: complex


@dataclass(frozen=True)
class PolarSample:
    """Polar data Phi = R e^{iS} = e^{P+iS} with first and second gradients.

    All subscripted components are plain partial derivatives (lower indices).
    box_r_over_r is the d'Alembertian ratio (box R)/R computed via the
    chain-rule identity Re(box Phi / Phi) + S_mu S^mu, which stays smooth
    where |Phi| has kinks. When near_node is set the gradient fields are
    zeroed and must not be used.
    """

    x: float
    t: float
    R: float
    P: float
    S: float
    S_0: float
    S_1: float
    P_0: float
    P_1: float
    S_00: float
    S_01: float
    S_11: float
    P_00: float
    P_01: float
    P_11: float
    box_r_over_r: float
    near_node: bool


def omega(box: BoxConfig, n: int) -> float:
    """Mode frequency w_n = sqrt((n pi / L)^2 + m0^2)."""
    if int(n) != n or n < 1:
        raise ValueError(f"mode number must be a positive integer, got {n!r}")
    k = n * math.pi / box.length
    return math.sqrt(k * k + box.rest_mass**2)


def default_eps_node(state: WaveState) -> float:
    """Node tolerance: 1e-10 of the state's amplitude scale."""
    return 1e-10 * state.amplitude_scale()


def eval_field(state: WaveState, x: float, t: float) -> FieldSample:
    """Evaluate Phi and all first/second derivatives analytically."""
    L = state.box.length
    if not (0.0 <= x <= L):
        raise ValueError(f"x={x!r} outside the box [0, {L!r}]")
    return _eval_unchecked(state, x, t)


def _eval_unchecked(state: WaveState, x: float, t: float) -> FieldSample:
    """eval_field without the domain check.

    Integrator stage points may poke slightly past a wall; the mode sum is
    still well defined there.
    """
    phi = d_t = d_x = d_tt = d_xx = d_tx = 0j
    for k, om, amp in state._terms:
        osc = amp * cmath.exp(complex(0.0, -om * t))
        term_s = osc * math.sin(k * x)
        term_c = osc * (k * math.cos(k * x))
        phi += term_s
        d_t += term_s * complex(0.0, -om)
        d_x += term_c
        d_tt += term_s * (-(om * om))
        d_xx += term_s * (-(k * k))
        d_tx += term_c * complex(0.0, -om)
    return FieldSample(x, t, phi, d_t, d_x, d_tt, d_xx, d_tx)


def eval_field_grid(
    state: WaveState, x: np.ndarray, t: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized eval_field over an array of positions at fixed t.

    Returns (phi, d_t, d_x, d_tt, d_xx, d_tx) as complex arrays.
    """
    x = np.asarray(x, dtype=float)
    L = state.box.length
    if np.any(x < 0.0) or np.any(x > L):
        raise ValueError("grid positions outside the box")
    ks, oms, amps = state.mode_arrays()
    sin = np.sin(np.outer(x, ks))
    cos = np.cos(np.outer(x, ks))
    terms = (amps * np.exp(-1j * oms * t))[None, :]
    phi = np.sum(terms * sin, axis=1)
    d_t = np.sum(terms * sin * (-1j * oms)[None, :], axis=1)
    d_x = np.sum(terms * cos * ks[None, :], axis=1)
    d_tt = np.sum(terms * sin * (-(oms**2))[None, :], axis=1)
    d_xx = np.sum(terms * sin * (-(ks**2))[None, :], axis=1)
    d_tx = np.sum(terms * cos * (ks * (-1j * oms))[None, :], axis=1)
    return phi, d_t, d_x, d_tt, d_xx, d_tx


def polar(sample: FieldSample, eps_node: float) -> PolarSample:
    """Polar-decompose a field sample; flags near-node points instead of raising.

    Gradients come from the logarithmic derivative: d_mu(P + iS) = d_mu Phi / Phi,
    and second gradients from d_mu d_nu(P + iS) = d_mu d_nu Phi / Phi
    - (d_mu Phi / Phi)(d_nu Phi / Phi).
    """
    R = abs(sample.phi)
    S = math.atan2(sample.phi.imag, sample.phi.real)
    if R < eps_node:
        P = math.log(R) if R > 0.0 else -math.inf
        return PolarSample(sample.x, sample.t, R, P, S, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, True)
    P = math.log(R)
    rt = sample.d_t / sample.phi
    rx = sample.d_x / sample.phi
    S_0, S_1 = rt.imag, rx.imag
    P_0, P_1 = rt.real, rx.real
    qtt = sample.d_tt / sample.phi - rt * rt
    qxx = sample.d_xx / sample.phi - rx * rx
    qtx = sample.d_tx / sample.phi - rt * rx
    box_phi_ratio = (sample.d_tt - sample.d_xx) / sample.phi
    box_r_over_r = box_phi_ratio.real + (S_0 * S_0 - S_1 * S_1)
    return PolarSample(
        sample.x,
        sample.t,
        R,
        P,
        S,
        S_0,
        S_1,
        P_0,
        P_1,
        qtt.imag,
        qtx.imag,
        qxx.imag,
        qtt.real,
        qtx.real,
        qxx.real,
        box_r_over_r,
        False,
    )


def j0(state: WaveState, x: float, t: float) -> float:
    """Time component of the conserved current, J0 = -R^2 S_0 / m0.

    Computed as -Im(d_t Phi * conj(Phi)) / m0, which needs no division by
    |Phi| and hence returns exactly 0 at nodes. The sign is meaningful:
    for superpositions J0 can be negative.
    """
    m0 = state.box.rest_mass
    if m0 <= 0:
        raise ValueError("current normalization requires m0 > 0")
    s = eval_field(state, x, t)
    return -(s.d_t * s.phi.conjugate()).imag / m0


def sample_residuals(sample: FieldSample, m0: float, eps_node: float) -> tuple[float, float]:
    """Continuity and Hamilton-Jacobi residuals from a raw field sample.

    continuity = d^mu (R^2 S_mu) = R^2 (2 (P_0 S_0 - P_1 S_1) + S_00 - S_11)
    hj         = S_mu S^mu - (box R)/R - m0^2

    Both vanish identically for exact Klein-Gordon solutions; nonzero values
    expose either a corrupted state or a pipeline bug.
    """
    p = polar(sample, eps_node)
    if p.near_node:
        raise NearNodeError("residuals undefined near a node", (sample.x, sample.t))
    continuity = p.R**2 * (2.0 * (p.P_0 * p.S_0 - p.P_1 * p.S_1) + p.S_00 - p.S_11)
    hj = (p.S_0**2 - p.S_1**2) - p.box_r_over_r - m0**2
    return continuity, hj


def residuals(state: WaveState, x: float, t: float, eps_node: float | None = None) -> tuple[float, float]:
    """Continuity and Hamilton-Jacobi residuals of the state at (x, t)."""
    if eps_node is None:
        eps_node = default_eps_node(state)
    return sample_residuals(eval_field(state, x, t), state.box.rest_mass, eps_node)


def effective_mass_sq(state: WaveState, x: float, t: float, eps_node: float | None = None) -> float:
    """Position-dependent squared rest mass m0^2 + (box R)/R.

    A negative value marks the imaginary-rest-mass region of the quantum
    Hamilton-Jacobi equation.
    """
    if eps_node is None:
        eps_node = default_eps_node(state)
    p = polar(eval_field(state, x, t), eps_node)
    if p.near_node:
        raise NearNodeError("effective mass undefined near a node", (x, t))
    return state.box.rest_mass**2 + p.box_r_over_r
