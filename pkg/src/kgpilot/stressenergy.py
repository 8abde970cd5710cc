"""Stress-energy tensor of the field and its eigen-decomposition.

For Phi = e^{P+iS} the covariant components in 1+1 dimensions, signature
(+,-), are

    T_mn = |phi|^2 [m0^2 - (P.P + S.S)] g_mn + 2 |phi|^2 (P_m P_n + S_m S_n)

with P.P = P_0^2 - P_1^2 etc. The mixed tensor T^m_n = [[T_00, T_01],
[-T_01, -T_11]] has a time-like and a space-like eigenvector; the time-like
one defines the energy-flow three-velocity, which stays subluminal where the
de Broglie velocity does not.

The eigenvalues are lambda = (T_00 - T_11)/2 +/- sqrt((T_00 + T_11)^2/4
- T_01^2); for tensors built from an actual field the discriminant equals
|phi|^4 [(P.P - S.S)^2 + 4 (P.S)^2] and is never negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateFlowError, NearNodeError, UndefinedThetaError
from .kgfield import PolarSample

__all__ = ["StressTensor", "FlowEigenpair", "stress_tensor", "eigen_flow", "v_energy", "v_theta"]

# |T_01| below this fraction of the largest component counts as axis-aligned.
T01_REL_TOL = 1e-12


@dataclass(frozen=True)
class StressTensor:
    """Covariant components at a point; symmetric, so three numbers suffice."""

    T_00: float
    T_01: float
    T_11: float
    amplitude_sq: float

    def max_abs(self) -> float:
        return max(abs(self.T_00), abs(self.T_01), abs(self.T_11))


@dataclass(frozen=True)
class FlowEigenpair:
    """Eigen-decomposition of the mixed tensor T^m_n.

    W_time is scaled to (1, v) with positive Minkowski norm; W_space has its
    space component scaled to 1 and negative Minkowski norm. When the
    discriminant is negative there is no real eigenbasis: degenerate is set,
    both complex eigenvalues are reported and the vectors are None. The
    axis-aligned case |T_01| ~ 0 is also flagged degenerate (the time-like
    eigenvector is the time axis itself) but keeps real data and v = 0.
    """

    lambda_time: complex
    lambda_space: complex
    W_time: tuple[float, float] | None
    W_space: tuple[float, float] | None
    degenerate: bool


def stress_tensor(p: PolarSample, m0: float) -> StressTensor:
    """Assemble the covariant stress tensor from polar data."""
    if p.near_node:
        raise NearNodeError("stress tensor undefined near a node", (p.x, p.t))
    F = p.R * p.R
    pp = p.P_0 * p.P_0 - p.P_1 * p.P_1
    ss = p.S_0 * p.S_0 - p.S_1 * p.S_1
    a = F * (m0 * m0 - (pp + ss))
    T_00 = a + 2.0 * F * (p.P_0 * p.P_0 + p.S_0 * p.S_0)
    T_01 = 2.0 * F * (p.P_0 * p.P_1 + p.S_0 * p.S_1)
    T_11 = -a + 2.0 * F * (p.P_1 * p.P_1 + p.S_1 * p.S_1)
    return StressTensor(T_00, T_01, T_11, F)


def eigen_flow(T: StressTensor) -> FlowEigenpair:
    """Eigenvalues and eigenvectors of T^m_n, split by causal character."""
    tnorm = T.max_abs()
    if tnorm == 0.0 or abs(T.T_01) < T01_REL_TOL * tnorm:
        # Diagonal mixed tensor: eigenvectors are the coordinate axes.
        return FlowEigenpair(T.T_00, -T.T_11, (1.0, 0.0), (0.0, 1.0), True)
    half_tr = 0.5 * (T.T_00 - T.T_11)
    disc = 0.25 * (T.T_00 + T.T_11) ** 2 - T.T_01**2
    if disc < 0.0:
        root = complex(0.0, math.sqrt(-disc))
        return FlowEigenpair(half_tr + root, half_tr - root, None, None, True)
    root = math.sqrt(disc)
    lam_plus = half_tr + root
    lam_minus = half_tr - root
    picked = []
    for lam in (lam_plus, lam_minus):
        w = (1.0, (lam - T.T_00) / T.T_01)
        picked.append((lam, w, w[0] * w[0] - w[1] * w[1]))
    timelike = [entry for entry in picked if entry[2] > 0.0]
    spacelike = [entry for entry in picked if entry[2] < 0.0]
    if len(timelike) != 1 or len(spacelike) != 1:
        # Coincident eigenvalues or a null eigenvector: no clean split.
        return FlowEigenpair(lam_plus, lam_minus, None, None, True)
    lam_t, w_t, _ = timelike[0]
    lam_s, w_s, _ = spacelike[0]
    w_s = (w_s[0] / w_s[1], 1.0)
    return FlowEigenpair(lam_t, lam_s, w_t, w_s, False)


def v_energy(T: StressTensor) -> float:
    """Energy-flow three-velocity W^1/W^0 of the time-like eigenvector."""
    pair = eigen_flow(T)
    if pair.W_time is None:
        raise DegenerateFlowError("no real time-like stress eigenvector")
    if pair.degenerate:
        return 0.0
    return pair.W_time[1] / pair.W_time[0]


def v_theta(p: PolarSample) -> float:
    """Energy-flow velocity via the hyperbolic angle between P and S.

    sinh(theta) = (P.P - S.S) / (2 P.S); the two candidate flow vectors are
    S^m + kappa P^m with kappa in {e^theta, -e^-theta} (the roots of
    (P.S) kappa^2 + (S.S - P.P) kappa - P.S = 0). The time-like one, oriented
    future-pointing, gives the velocity; in 1+1 it must equal v_energy.
    """
    if p.near_node:
        raise NearNodeError("v_theta undefined near a node", (p.x, p.t))
    pp = p.P_0 * p.P_0 - p.P_1 * p.P_1
    ss = p.S_0 * p.S_0 - p.S_1 * p.S_1
    ps = p.P_0 * p.S_0 - p.P_1 * p.S_1
    scale = max(abs(pp), abs(ss), 1e-300)
    if abs(ps) < 1e-14 * scale:
        raise UndefinedThetaError("P.S = 0, hyperbolic angle undefined", (p.x, p.t))
    sinh_th = (pp - ss) / (2.0 * ps)
    cosh_th = math.sqrt(1.0 + sinh_th * sinh_th)
    candidates = []
    for kappa in (sinh_th + cosh_th, sinh_th - cosh_th):
        w0 = p.S_0 + kappa * p.P_0
        w1 = -(p.S_1 + kappa * p.P_1)
        norm = w0 * w0 - w1 * w1
        if norm > 0.0:
            if w0 < 0.0:
                w0, w1 = -w0, -w1
            candidates.append((w0, w1))
    if len(candidates) != 1:
        raise DegenerateFlowError(
            f"{len(candidates)} time-like flow candidates, expected exactly one", (p.x, p.t)
        )
    w0, w1 = candidates[0]
    return w1 / w0
