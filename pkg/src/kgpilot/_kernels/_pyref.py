"""Pure-Python trajectory stepper; reference semantics for the compiled twin.

The compiled extension in _core.pyx implements exactly this algorithm with
the same operation order, so the two backends agree to round-off. Keep the
two in sync when changing either.
"""

from __future__ import annotations

import math

import numpy as np

LAW_DEBROGLIE = 0
LAW_MODIFIED = 1

STOP_COMPLETE = 0
STOP_NODE = 1
STOP_BOUNDARY = 2


def _flow(ks, oms, cre, cim, nm, law, x, t):
    """Guidance flow (dt/dtau, dx/dtau), |phi|^2 and S_0 at one point."""
    u_re = u_im = ut_re = ut_im = ux_re = ux_im = 0.0
    for j in range(nm):
        k = ks[j]
        w = oms[j]
        s = math.sin(k * x)
        c = math.cos(k * x)
        e_re = math.cos(w * t)
        e_im = -math.sin(w * t)
        a_re = cre[j] * e_re - cim[j] * e_im
        a_im = cre[j] * e_im + cim[j] * e_re
        u_re += a_re * s
        u_im += a_im * s
        ut_re += w * a_im * s
        ut_im += -w * a_re * s
        ux_re += a_re * c * k
        ux_im += a_im * c * k
    den = u_re * u_re + u_im * u_im
    if den < 1e-300:
        return 0.0, 0.0, den, 0.0
    s0 = (ut_im * u_re - ut_re * u_im) / den
    s1 = (ux_im * u_re - ux_re * u_im) / den
    ft = abs(s0) if law == LAW_MODIFIED else -s0
    return ft, s1, den, s0


def integrate_flow(ks, oms, amp_re, amp_im, L, law, x0, t0, h, n_steps, eps_node_sq):
    """Fixed-step RK4 on the tau-parametrized guidance flow.

    Returns (xs, ts, ft, fx, s0, stop_code); samples 0..n are the committed
    path, flow components evaluated exactly at each sample. Stops early when
    |phi|^2 at a landing point drops below eps_node_sq (the node sample is
    committed with zeroed flow) or when a landing leaves (0, L) (the landing
    is not committed).
    """
    ks = [float(v) for v in ks]
    oms = [float(v) for v in oms]
    cre = [float(v) for v in amp_re]
    cim = [float(v) for v in amp_im]
    nm = len(ks)
    xs = np.empty(n_steps + 1)
    ts = np.empty(n_steps + 1)
    fts = np.empty(n_steps + 1)
    fxs = np.empty(n_steps + 1)
    s0s = np.empty(n_steps + 1)

    x, t = float(x0), float(t0)
    ft, fx, den, s0 = _flow(ks, oms, cre, cim, nm, law, x, t)
    xs[0], ts[0], fts[0], fxs[0], s0s[0] = x, t, ft, fx, s0
    stop = STOP_COMPLETE
    n = 0
    if den < eps_node_sq:
        stop = STOP_NODE
        fts[0] = fxs[0] = s0s[0] = 0.0
    else:
        for i in range(n_steps):
            k1t, k1x = ft, fx
            k2t, k2x, _, _ = _flow(ks, oms, cre, cim, nm, law, x + 0.5 * h * k1x, t + 0.5 * h * k1t)
            k3t, k3x, _, _ = _flow(ks, oms, cre, cim, nm, law, x + 0.5 * h * k2x, t + 0.5 * h * k2t)
            k4t, k4x, _, _ = _flow(ks, oms, cre, cim, nm, law, x + h * k3x, t + h * k3t)
            t = t + h * (k1t + 2.0 * k2t + 2.0 * k3t + k4t) / 6.0
            x = x + h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
            if x <= 0.0 or x >= L:
                stop = STOP_BOUNDARY
                break
            ft, fx, den, s0 = _flow(ks, oms, cre, cim, nm, law, x, t)
            n = i + 1
            if den < eps_node_sq:
                xs[n], ts[n], fts[n], fxs[n], s0s[n] = x, t, 0.0, 0.0, 0.0
                stop = STOP_NODE
                break
            xs[n], ts[n], fts[n], fxs[n], s0s[n] = x, t, ft, fx, s0
    return xs[: n + 1], ts[: n + 1], fts[: n + 1], fxs[: n + 1], s0s[: n + 1], stop
