import math

import pytest

from core.config import DelayProfile, Reference
from utils.signals import delay_at, max_delay, reference_eval, reference_peaks


def test_reference_derivatives():
    r = Reference(amplitude=0.5, omega=0.5)
    t = 1.3
    th, th_dot, th_ddot = reference_eval(r, t)
    assert th == pytest.approx(0.5 * math.sin(0.65))
    assert th_dot == pytest.approx(0.25 * math.cos(0.65))
    assert th_ddot == pytest.approx(-0.125 * math.sin(0.65))


def test_reference_phase_shift():
    th, _, _ = reference_eval(Reference(amplitude=1.0, omega=1.0, phase=math.pi / 2), 0.0)
    assert th == pytest.approx(1.0)


def test_reference_peaks():
    assert reference_peaks(Reference(amplitude=-2.0, omega=3.0)) == (6.0, 18.0)


def test_delay_profile_stays_within_amplitude():
    d = DelayProfile(amplitude=0.02, omega=0.01)
    for t in (0.0, 10.0, 157.0, 314.15, 1000.0):
        assert 0.0 <= delay_at(d, t) <= 0.02
    assert delay_at(d, 0.0) == 0.0
    assert delay_at(d, 50.0) == pytest.approx(0.02 * abs(math.sin(0.5)))


def test_zero_delay_profile():
    assert delay_at(DelayProfile(), 12.0) == 0.0
    assert max_delay(DelayProfile()) == 0.0
    assert max_delay(DelayProfile(amplitude=0.02, omega=0.0)) == 0.0
    assert max_delay(DelayProfile(amplitude=0.02, omega=0.01)) == 0.02


def test_delay_profile_rejects_amplitude_above_bound():
    with pytest.raises(ValueError):
        DelayProfile(amplitude=0.2, omega=0.01, bound=0.1)
