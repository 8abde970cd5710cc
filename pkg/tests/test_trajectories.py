import math

import numpy as np
import pytest

from kgpilot import (
    ConstraintViolationError,
    DegenerateFlowError,
    DyadFrame,
    InitialCondition,
    IntegratorConfig,
    NearNodeError,
    PoleError,
    TrajectoryRecord,
    VelocityLaw,
    detect_self_intersection,
    eval_field,
    fermi_transport,
    gauss_flux,
    integrate,
)
from conftest import OM1

# The loop orbit used throughout: a de Broglie path launched just left of the
# S_0 roots circulates in the (x, t) plane with period ~0.543.
LOOP_IC = InitialCondition(1.9, -0.04)


def _frame_drift(frames):
    worst = 0.0
    for f in frames:
        et, es = f.e_time, f.e_space
        worst = max(
            worst,
            abs(et[0] ** 2 - et[1] ** 2 - 1.0),
            abs(es[0] ** 2 - es[1] ** 2 + 1.0),
            abs(et[0] * es[0] - et[1] * es[1]),
        )
    return worst


def test_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(h=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(max_steps=0)
    with pytest.raises(ValueError):
        IntegratorConfig(tau_span=-1.0)


def test_initial_condition_validation(two_mode):
    cfg = IntegratorConfig(tau_span=0.1)
    with pytest.raises(ValueError):
        integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(-0.5, 0.0), cfg)
    with pytest.raises(ValueError):
        integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(math.pi, 0.0), cfg)
    # a genuine interior node of the t = 0 snapshot sits at x = 2 pi / 3
    with pytest.raises(NearNodeError):
        integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(2.0 * math.pi / 3.0, 0.0), cfg)
    with pytest.raises(PoleError):
        from kgpilot import roots_of_s0

        root = roots_of_s0(two_mode, 0.1, xtol=1e-13)[0]
        integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(root, 0.1), cfg)


def test_single_mode_paths_are_exact(single_mode):
    """One mode: S_0 = -w1, S_1 = 0, so the flow is a straight line in t and
    RK4 reproduces it to machine precision."""
    cfg = IntegratorConfig(h=1e-2, tau_span=1.0)
    ic = InitialCondition(1.1, 0.2)
    for law in (VelocityLaw.DeBroglie, VelocityLaw.ModifiedAbs):
        rec = integrate(single_mode, law, ic, cfg)
        assert rec.stop_reason == "complete"
        assert np.max(np.abs(rec.x - ic.x0)) < 1e-13
        assert np.max(np.abs(rec.t - (ic.t0 + OM1 * rec.tau))) < 1e-12
        assert rec.events == []
    rec = integrate(single_mode, VelocityLaw.EnergyFlow, ic, cfg)
    assert np.max(np.abs(rec.x - ic.x0)) < 1e-13
    assert np.max(np.abs(rec.t - (ic.t0 + rec.tau))) < 1e-13


def test_record_sample_layout(two_mode):
    cfg = IntegratorConfig(h=1e-3, tau_span=0.05)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(1.0, 0.0), cfg)
    s = rec.samples
    assert s.shape == (len(rec.tau), 5)
    assert np.array_equal(s[:, 0], rec.tau)
    assert np.array_equal(s[:, 2], rec.t)
    assert rec.tau[0] == 0.0 and rec.x[0] == 1.0 and rec.t[0] == 0.0


def test_max_steps_truncates(two_mode):
    cfg = IntegratorConfig(h=1e-3, tau_span=1.0, max_steps=50)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(1.0, 0.0), cfg)
    assert len(rec.tau) == 51


def test_rk4_self_convergence(two_mode):
    """Fourth-order convergence of the endpoint against a fine reference."""
    ic = InitialCondition(1.0, 0.0)
    span = 0.24
    ref = integrate(two_mode, VelocityLaw.DeBroglie, ic, IntegratorConfig(h=1.5e-5, tau_span=span))
    ref_end = np.array([ref.x[-1], ref.t[-1]])
    errs = []
    for h in (1.6e-2, 8e-3, 4e-3):
        rec = integrate(two_mode, VelocityLaw.DeBroglie, ic, IntegratorConfig(h=h, tau_span=span))
        assert rec.tau[-1] == pytest.approx(span, abs=1e-12)
        errs.append(float(np.hypot(*(np.array([rec.x[-1], rec.t[-1]]) - ref_end))))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) > 3.8
    assert errs[-1] < 1e-12


def test_loop_orbit_debroglie(two_mode):
    """The loop initial condition: time turns around and the path crosses
    itself; S_0 sign changes appear in pairs along each winding."""
    cfg = IntegratorConfig(h=1e-3, tau_span=1.2)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, LOOP_IC, cfg)
    assert rec.stop_reason == "complete"
    kinds = {e.kind for e in rec.events}
    assert "SelfIntersection" in kinds
    assert "S0SignChange" in kinds
    assert np.min(np.diff(rec.t)) < 0.0  # coordinate time runs backwards
    taus = [e.tau for e in rec.events]
    assert taus == sorted(taus)
    # the same points recur: the orbit is periodic to integrator accuracy
    period = 0.543
    i = int(round(period / cfg.h))
    assert abs(rec.x[i] - rec.x[0]) < 5e-3 and abs(rec.t[i] - rec.t[0]) < 5e-3


def test_loop_resolved_by_modified_law(two_mode):
    """Same start, |S_0| law: proper time moves forward monotonically and the
    path never crosses itself."""
    cfg = IntegratorConfig(h=1e-3, tau_span=1.2)
    rec = integrate(two_mode, VelocityLaw.ModifiedAbs, LOOP_IC, cfg)
    assert np.all(rec.dtdtau >= 0.0)
    assert np.all(np.diff(rec.t) > 0.0)
    assert not any(e.kind == "SelfIntersection" for e in rec.events)


def test_laws_coincide_while_s0_negative(two_mode):
    """Launched where S_0 < 0 and integrated over a window that never meets
    the S_0 = 0 line, the two division laws produce bitwise-equal paths."""
    ic = InitialCondition(1.0, 0.0)
    cfg = IntegratorConfig(h=1e-3, tau_span=0.5)
    a = integrate(two_mode, VelocityLaw.DeBroglie, ic, cfg)
    b = integrate(two_mode, VelocityLaw.ModifiedAbs, ic, cfg)
    assert not any(e.kind == "S0SignChange" for e in a.events)
    assert np.array_equal(a.x, b.x)
    assert np.array_equal(a.t, b.t)


def test_energy_flow_stays_subluminal(two_mode):
    cfg = IntegratorConfig(h=1e-3, tau_span=1.2)
    rec = integrate(two_mode, VelocityLaw.EnergyFlow, LOOP_IC, cfg)
    assert rec.stop_reason == "complete"
    assert np.all(rec.dtdtau == 1.0)
    assert np.max(np.abs(rec.dxdtau)) < 1.0
    assert np.all(np.diff(rec.t) > 0.0)
    assert not any(e.kind == "SelfIntersection" for e in rec.events)


def test_node_stop(two_mode):
    """With the node tolerance cranked up to 98% of the launch amplitude the
    very first dip of |phi| halts the path."""
    amp0 = abs(eval_field(two_mode, LOOP_IC.x0, LOOP_IC.t0).phi)
    cfg = IntegratorConfig(h=1e-3, tau_span=2.0, eps_node=0.98 * amp0)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, LOOP_IC, cfg)
    assert rec.stop_reason == "node"
    assert rec.events[-1].kind == "NodeProximity"
    assert rec.tau[-1] < 2.0


def test_boundary_stop(two_mode):
    """A deliberately huge step walks the path out of the box."""
    cfg = IntegratorConfig(h=1.0, tau_span=40.0)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(0.41, -0.4), cfg)
    assert rec.stop_reason == "boundary"
    assert [e.kind for e in rec.events] == ["BoundaryHit"]
    assert np.all(rec.x > 0.0) and np.all(rec.x < math.pi)


def _polyline_record(points, h=1.0):
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    zeros = np.zeros(n)
    return TrajectoryRecord(
        law=VelocityLaw.DeBroglie,
        tau=np.arange(n) * h,
        x=pts[:, 0],
        t=pts[:, 1],
        dtdtau=zeros,
        dxdtau=zeros,
        s0=zeros - 1.0,
        stop_reason="complete",
        state=None,
        ic=InitialCondition(float(pts[0, 0]), float(pts[0, 1])),
        cfg=IntegratorConfig(h=h, tau_span=(n - 1) * h),
    )


def test_self_intersection_synthetic_crossing():
    """Hand-built polyline whose first and third segments cross at (1.8, 1.8)
    with parameters u = 0.9, v = 0.6; tau reports the later passage."""
    rec = _polyline_record([(0.0, 0.0), (2.0, 2.0), (3.0, 0.0), (1.0, 3.0)])
    events = detect_self_intersection(rec, append=False)
    assert len(events) == 1
    ev = events[0]
    assert ev.kind == "SelfIntersection"
    assert ev.location[0] == pytest.approx(1.8, abs=1e-12)
    assert ev.location[1] == pytest.approx(1.8, abs=1e-12)
    assert ev.tau == pytest.approx(2.6, abs=1e-12)


def test_self_intersection_ignores_shared_endpoints():
    rec = _polyline_record([(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0)])
    assert detect_self_intersection(rec, append=False) == []


def test_self_intersection_append_flag():
    rec = _polyline_record([(0.0, 0.0), (2.0, 2.0), (3.0, 0.0), (1.0, 3.0)])
    assert rec.events == []
    found = detect_self_intersection(rec)
    assert len(found) == 1 and rec.events == found


def test_transport_trivial_on_straight_path(single_mode):
    """Constant tangent: the transport generator is zero up to roundoff in
    the second phase gradients, so the frame never moves."""
    cfg = IntegratorConfig(h=1e-2, tau_span=0.5)
    rec = integrate(single_mode, VelocityLaw.DeBroglie, InitialCondition(1.1, 0.0), cfg)
    dyad = DyadFrame((1.0, 0.0), (0.0, 1.0))
    frames = fermi_transport(rec, dyad)
    assert len(frames) == len(rec.tau)
    for f in frames:
        assert abs(f.e_time[0] - 1.0) < 1e-13 and abs(f.e_time[1]) < 1e-13
        assert abs(f.e_space[0]) < 1e-13 and abs(f.e_space[1] - 1.0) < 1e-13


def test_transport_preserves_orthonormality_through_loop(two_mode):
    cfg = IntegratorConfig(h=1e-3, tau_span=1.2)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, LOOP_IC, cfg)
    frames = fermi_transport(rec, DyadFrame((1.0, 0.0), (0.0, 1.0)))
    assert len(frames) == len(rec.tau)
    assert frames[0] == DyadFrame((1.0, 0.0), (0.0, 1.0))
    assert _frame_drift(frames) < 1e-8


def test_transport_deterministic(two_mode):
    cfg = IntegratorConfig(h=1e-3, tau_span=0.6)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, LOOP_IC, cfg)
    a = fermi_transport(rec, DyadFrame((1.0, 0.0), (0.0, 1.0)))
    b = fermi_transport(rec, DyadFrame((1.0, 0.0), (0.0, 1.0)))
    assert a == b


def test_transport_rejects_bad_dyad(two_mode):
    cfg = IntegratorConfig(h=1e-3, tau_span=0.1)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, InitialCondition(1.0, 0.0), cfg)
    with pytest.raises(ConstraintViolationError):
        fermi_transport(rec, DyadFrame((1.0, 0.0), (1.0, 1.0)))
    with pytest.raises(ConstraintViolationError):
        fermi_transport(rec, DyadFrame((2.0, 0.0), (0.0, 1.0)))


def test_transport_null_crossing_requires_bracketing(two_mode):
    """The loop tangent crosses the light cone; with bracketing disabled the
    transport must refuse rather than integrate a divergent generator."""
    cfg = IntegratorConfig(h=1e-3, tau_span=1.2)
    rec = integrate(two_mode, VelocityLaw.DeBroglie, LOOP_IC, cfg)
    with pytest.raises(DegenerateFlowError):
        fermi_transport(rec, DyadFrame((1.0, 0.0), (0.0, 1.0)), nu_null=0.0)


def test_gauss_flux_residual_refines_to_zero(two_mode):
    rect = (1.5, 2.5, 0.0, 0.2)
    residuals = [abs(gauss_flux(two_mode, rect, edge_n=n)) for n in (250, 500, 1000, 2000)]
    assert residuals[-1] < 1e-6
    for a, b in zip(residuals, residuals[1:]):
        assert b < a
    # composite Simpson: each doubling should gain roughly 2^4
    assert residuals[0] / residuals[-1] > 1e3


def test_gauss_flux_wall_edges_allowed(two_mode):
    assert abs(gauss_flux(two_mode, (0.0, math.pi, -0.3, 0.3))) < 1e-10


def test_gauss_flux_validation(two_mode):
    with pytest.raises(ValueError):
        gauss_flux(two_mode, (2.5, 1.5, 0.0, 0.2))
    with pytest.raises(ValueError):
        gauss_flux(two_mode, (1.5, 2.5, 0.2, 0.0))
    with pytest.raises(ValueError):
        gauss_flux(two_mode, (-0.1, 2.5, 0.0, 0.2))
    with pytest.raises(ValueError):
        gauss_flux(two_mode, (1.5, 2.5, 0.0, 0.2), edge_n=2)
