import math

import numpy as np
import pytest

from kgpilot import (
    ClassicalState,
    ConstantElectric,
    ConstraintViolationError,
    Tabulated,
    Zero,
    charge_conjugation_check,
    classical_derivs,
    integrate_classical,
)


def _linear_tab():
    """Globally linear A_x: exact under linear interpolation, so the only
    energy error left is the integrator's own."""
    xs = np.linspace(-5.0, 15.0, 81)
    return Tabulated(tuple(xs), tuple(0.2 - 0.15 * xs), tuple([-0.15] * 81))


def test_state_validation():
    with pytest.raises(ValueError):
        ClassicalState(0.0, 0.0, zeta=0)
    with pytest.raises(ValueError):
        ClassicalState(0.0, 0.0, zeta=1, mass=-1.0)
    s = ClassicalState(0.0, 0.3, zeta=-1, charge=2.0)
    assert s.g == -2.0


def test_tabulated_validation():
    with pytest.raises(ValueError):
        Tabulated((0.0,), (1.0,), (0.0,))
    with pytest.raises(ValueError):
        Tabulated((0.0, 1.0), (1.0, 2.0), (0.0,))
    with pytest.raises(ValueError):
        Tabulated((0.0, 1.0, 0.5), (1.0, 2.0, 3.0), (0.0, 0.0, 0.0))


def test_derivs_free_particle():
    s = ClassicalState(0.0, 0.6, zeta=1)
    v, f = classical_derivs(s, Zero())
    assert v == pytest.approx(0.6 / math.sqrt(1.36), abs=1e-15)
    assert f == 0.0
    assert abs(v) < 1.0


def test_derivs_off_shell_raises():
    s = ClassicalState(0.0, 0.0, zeta=1, mass=0.0)
    with pytest.raises(ConstraintViolationError):
        classical_derivs(s, Zero())


def test_free_particle_straight_line():
    s = ClassicalState(0.0, 0.5, zeta=1)
    path = integrate_classical(s, Zero(), X_span=4.0, h=1e-2)
    v = 0.5 / math.sqrt(1.25)
    assert np.max(np.abs(path.x - v * path.X)) < 1e-13
    assert np.max(np.abs(path.p - 0.5)) == 0.0
    assert path.max_shell_drift < 1e-15


def test_constant_field_hyperbola():
    """Rest-started unit charge in E = 0.5: p stays put (temporal gauge) and
    x follows the textbook hyperbola to integrator accuracy."""
    E = 0.5
    s = ClassicalState(1.0, 0.0, zeta=1)
    path = integrate_classical(s, ConstantElectric(E), X_span=5.0, h=1e-3)
    exact = 1.0 + (np.sqrt(1.0 + (E * path.X) ** 2) - 1.0) / E
    assert np.max(np.abs(path.x - exact)) < 1e-8
    assert np.max(np.abs(path.p)) == 0.0
    # speed approaches but never reaches light speed
    v_end = (path.x[-1] - path.x[-2]) / (path.X[-1] - path.X[-2])
    assert 0.9 < v_end < 1.0


def test_constant_field_energy_monitor():
    """In a time-dependent gauge H grows; the co-integrated energy must track
    the recomputed one, which is exactly what the drift monitor measures."""
    s = ClassicalState(0.0, 0.0, zeta=1)
    path = integrate_classical(s, ConstantElectric(1.0), X_span=5.0, h=1e-3)
    assert path.H[-1] == pytest.approx(math.sqrt(26.0), abs=1e-9)
    assert path.max_shell_drift < 1e-9


def test_static_potential_conserves_energy():
    """A static A_x is pure gauge in one dimension: H is constant and the
    kinetic momentum is force-balanced. Linear tabulated data keeps the
    interpolant consistent with its gradient, so drift is pure roundoff."""
    s = ClassicalState(0.0, 0.4, zeta=1)
    path = integrate_classical(s, _linear_tab(), X_span=10.0, h=1e-3, drift_tol=1e-9)
    assert path.max_shell_drift < 1e-12
    assert np.max(path.H) - np.min(path.H) < 1e-12


def test_rk4_order_against_hyperbola():
    """Error vs the closed form falls as h^4; coarse steps need a loose
    drift_tol since the monitor measures exactly this error."""
    E = 1.0
    s = ClassicalState(0.0, 0.0, zeta=1)
    errs = []
    for h in (0.25, 0.125, 0.0625):
        path = integrate_classical(s, ConstantElectric(E), X_span=5.0, h=h, drift_tol=1e-3)
        exact = (np.sqrt(1.0 + (E * path.X) ** 2) - 1.0) / E
        errs.append(float(np.max(np.abs(path.x - exact))))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) > 3.8


def test_drift_abort():
    """An unreachable tolerance trips the monitor instead of silently
    returning a bad path."""
    s = ClassicalState(0.0, 0.0, zeta=1)
    with pytest.raises(ConstraintViolationError):
        integrate_classical(s, ConstantElectric(1.0), X_span=0.01, h=1e-3, drift_tol=1e-17)


def test_span_and_step_validation():
    s = ClassicalState(0.0, 0.0, zeta=1)
    with pytest.raises(ValueError):
        integrate_classical(s, Zero(), X_span=-1.0, h=1e-3)
    with pytest.raises(ValueError):
        integrate_classical(s, Zero(), X_span=1.0, h=0.0)


def test_speed_always_subluminal():
    s = ClassicalState(0.0, 0.0, zeta=1)
    path = integrate_classical(s, ConstantElectric(2.0), X_span=8.0, h=1e-2, drift_tol=1e-4)
    v = np.diff(path.x) / np.diff(path.X)
    assert np.max(np.abs(v)) < 1.0


@pytest.mark.parametrize("pot", [Zero(), ConstantElectric(0.7), _linear_tab()])
def test_charge_conjugation(pot):
    """Flipping zeta and e together leaves g and hence the whole path
    unchanged, bit for bit."""
    s = ClassicalState(0.3, 0.4, zeta=1)
    agrees, dev = charge_conjugation_check(s, pot, X_span=3.0, h=1e-2)
    assert agrees
    assert dev == 0.0


def test_antiparticle_accelerates_oppositely():
    """Opposite zeta at the same charge reverses the effective coupling: in a
    constant field the two sectors run apart symmetrically."""
    E = 0.5
    plus = integrate_classical(ClassicalState(0.0, 0.0, zeta=1), ConstantElectric(E), 4.0, 1e-2)
    minus = integrate_classical(ClassicalState(0.0, 0.0, zeta=-1), ConstantElectric(E), 4.0, 1e-2)
    assert np.max(np.abs(plus.x + minus.x)) < 1e-12
    assert plus.x[-1] > 1.0
