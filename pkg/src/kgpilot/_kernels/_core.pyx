# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled trajectory stepper; algorithm mirrors _pyref.integrate_flow."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, sin

cnp.import_array()

cdef int LAW_MODIFIED = 1
cdef int STOP_COMPLETE = 0
cdef int STOP_NODE = 1
cdef int STOP_BOUNDARY = 2


cdef inline void _flow(double[::1] ks, double[::1] oms, double[::1] cre, double[::1] cim,
                       Py_ssize_t nm, int law, double x, double t, double* out) nogil:
    cdef double u_re = 0.0, u_im = 0.0, ut_re = 0.0, ut_im = 0.0, ux_re = 0.0, ux_im = 0.0
    cdef double k, w, s, c, e_re, e_im, a_re, a_im, den, s0, s1
    cdef Py_ssize_t j
    for j in range(nm):
        k = ks[j]
        w = oms[j]
        s = sin(k * x)
        c = cos(k * x)
        e_re = cos(w * t)
        e_im = -sin(w * t)
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
        out[0] = 0.0
        out[1] = 0.0
        out[2] = den
        out[3] = 0.0
        return
    s0 = (ut_im * u_re - ut_re * u_im) / den
    s1 = (ux_im * u_re - ux_re * u_im) / den
    out[0] = fabs(s0) if law == LAW_MODIFIED else -s0
    out[1] = s1
    out[2] = den
    out[3] = s0


def integrate_flow(ks, oms, amp_re, amp_im, double L, int law, double x0, double t0,
                   double h, Py_ssize_t n_steps, double eps_node_sq):
    """Same contract as the pure-Python reference; see _pyref.integrate_flow."""
    cdef double[::1] ksv = np.ascontiguousarray(ks, dtype=np.float64)
    cdef double[::1] omv = np.ascontiguousarray(oms, dtype=np.float64)
    cdef double[::1] crv = np.ascontiguousarray(amp_re, dtype=np.float64)
    cdef double[::1] civ = np.ascontiguousarray(amp_im, dtype=np.float64)
    cdef Py_ssize_t nm = ksv.shape[0]

    xs_arr = np.empty(n_steps + 1)
    ts_arr = np.empty(n_steps + 1)
    ft_arr = np.empty(n_steps + 1)
    fx_arr = np.empty(n_steps + 1)
    s0_arr = np.empty(n_steps + 1)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ts = ts_arr
    cdef double[::1] fts = ft_arr
    cdef double[::1] fxs = fx_arr
    cdef double[::1] s0s = s0_arr

    cdef double x = x0, t = t0
    cdef double f[4]
    cdef double k1t, k1x, k2t, k2x, k3t, k3x, k4t, k4x
    cdef int stop = STOP_COMPLETE
    cdef Py_ssize_t n = 0, i

    _flow(ksv, omv, crv, civ, nm, law, x, t, f)
    xs[0] = x
    ts[0] = t
    fts[0] = f[0]
    fxs[0] = f[1]
    s0s[0] = f[3]
    if f[2] < eps_node_sq:
        stop = STOP_NODE
        fts[0] = 0.0
        fxs[0] = 0.0
        s0s[0] = 0.0
    else:
        with nogil:
            for i in range(n_steps):
                k1t = f[0]
                k1x = f[1]
                _flow(ksv, omv, crv, civ, nm, law, x + 0.5 * h * k1x, t + 0.5 * h * k1t, f)
                k2t = f[0]
                k2x = f[1]
                _flow(ksv, omv, crv, civ, nm, law, x + 0.5 * h * k2x, t + 0.5 * h * k2t, f)
                k3t = f[0]
                k3x = f[1]
                _flow(ksv, omv, crv, civ, nm, law, x + h * k3x, t + h * k3t, f)
                k4t = f[0]
                k4x = f[1]
                t = t + h * (k1t + 2.0 * k2t + 2.0 * k3t + k4t) / 6.0
                x = x + h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
                if x <= 0.0 or x >= L:
                    stop = STOP_BOUNDARY
                    break
                _flow(ksv, omv, crv, civ, nm, law, x, t, f)
                n = i + 1
                if f[2] < eps_node_sq:
                    xs[n] = x
                    ts[n] = t
                    fts[n] = 0.0
                    fxs[n] = 0.0
                    s0s[n] = 0.0
                    stop = STOP_NODE
                    break
                xs[n] = x
                ts[n] = t
                fts[n] = f[0]
                fxs[n] = f[1]
                s0s[n] = f[3]
    return (xs_arr[: n + 1], ts_arr[: n + 1], ft_arr[: n + 1], fx_arr[: n + 1], s0_arr[: n + 1], stop)
