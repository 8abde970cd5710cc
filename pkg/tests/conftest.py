import math

import numpy as np
import pytest

from kgpilot import BoxConfig, ModeSpec, WaveState

OM1 = math.sqrt(2.0)
OM2 = math.sqrt(5.0)


@pytest.fixture
def two_mode():
    """The reference state: L=pi, m0=1, modes 1 and 2 at amplitude 1/sqrt(2)."""
    amp = 1.0 / math.sqrt(2.0)
    return WaveState(BoxConfig(math.pi, 1.0), (ModeSpec(1, amp), ModeSpec(2, amp)))


@pytest.fixture
def single_mode():
    return WaveState(BoxConfig(math.pi, 1.0), (ModeSpec(1, 1.0),))


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


def interior_points(rng, n, x_lo=0.05, x_hi=math.pi - 0.05, t_lo=-2.0, t_hi=2.0):
    """Random (x, t) samples away from the walls."""
    xs = rng.uniform(x_lo, x_hi, n)
    ts = rng.uniform(t_lo, t_hi, n)
    return xs, ts
