import pytest
from hypothesis import given, strategies as st

from gesturebot.errors import NotStopped
from gesturebot.force import (
    ALERT,
    NORMAL,
    STOP_ROBOT,
    STOPPED,
    VIBRATE_OFF,
    VIBRATE_ON,
    ForceGuard,
    ForceReading,
    ForceThresholds,
)


def fz(value, t=0):
    return ForceReading(fz=value, t_ms=t)


class TestThresholds:
    def test_stop_level_identity(self):
        th = ForceThresholds(f_za=10.0, p=0.2)
        assert th.f_zl == 12.0
        assert th.f_zl_torque == 6.0

    def test_p_range_validated(self):
        with pytest.raises(ValueError):
            ForceThresholds(p=1.5)
        with pytest.raises(ValueError):
            ForceThresholds(p=-0.1)

    @given(st.floats(0.1, 1000, allow_nan=False),
           st.floats(0, 1, allow_nan=False))
    def test_stop_level_identity_property(self, f_za, p):
        th = ForceThresholds(f_za=f_za, p=p)
        assert th.f_zl == f_za * (1.0 + p)


class TestPhaseSequences:
    def test_ramp_to_alert_then_stop(self):
        guard = ForceGuard()
        assert guard.update(fz(5.0)) == []
        assert guard.phase == NORMAL
        assert guard.update(fz(10.0)) == [VIBRATE_ON]
        assert guard.phase == ALERT
        assert guard.offending == "fz"
        assert guard.update(fz(11.0)) == []          # still alerting
        assert guard.update(fz(12.0)) == [STOP_ROBOT, VIBRATE_OFF]
        assert guard.phase == STOPPED

    def test_recovery_branch(self):
        guard = ForceGuard()
        assert guard.update(fz(10.5)) == [VIBRATE_ON]
        assert guard.update(fz(4.0)) == [VIBRATE_OFF]
        assert guard.phase == NORMAL
        assert guard.offending is None

    def test_direct_jump_to_stop_vibrates_first(self):
        guard = ForceGuard()
        assert guard.update(fz(50.0)) == [VIBRATE_ON, STOP_ROBOT, VIBRATE_OFF]
        assert guard.phase == STOPPED

    def test_stopped_absorbs_everything(self):
        guard = ForceGuard()
        guard.update(fz(50.0))
        assert guard.update(fz(0.0)) == []
        assert guard.update(fz(100.0)) == []
        assert guard.phase == STOPPED

    def test_negative_forces_use_magnitude(self):
        guard = ForceGuard()
        assert guard.update(fz(-12.0)) == [VIBRATE_ON, STOP_ROBOT, VIBRATE_OFF]

    def test_torque_components_have_own_level(self):
        guard = ForceGuard()
        assert guard.update(ForceReading(tx=5.0)) == [VIBRATE_ON]
        assert guard.phase == ALERT
        assert guard.offending == "tx"

    def test_below_alert_never_alerts(self):
        guard = ForceGuard()
        for v in (0.0, 3.0, 9.99, 5.0):
            assert guard.update(fz(v)) == []
        assert guard.phase == NORMAL


class TestTare:
    def test_tool_weight_subtracted(self):
        guard = ForceGuard(tare=ForceReading(fz=8.0))
        assert guard.update(fz(8.0)) == []      # the tool weight alone
        assert guard.update(fz(17.0)) == []     # delta 9 < alert 10
        assert guard.update(fz(18.0)) == [VIBRATE_ON]

    def test_tare_works_both_directions(self):
        guard = ForceGuard(tare=ForceReading(fz=8.0))
        assert guard.update(fz(-2.0)) == [VIBRATE_ON]   # |(-2) - 8| = 10


class TestReset:
    def test_reset_requires_stopped(self):
        guard = ForceGuard()
        with pytest.raises(NotStopped):
            guard.reset()
        guard.update(fz(10.5))
        with pytest.raises(NotStopped):
            guard.reset()

    def test_reset_from_stopped(self):
        guard = ForceGuard()
        guard.update(fz(50.0))
        guard.reset()
        assert guard.phase == NORMAL
        assert guard.offending is None
        assert guard.update(fz(10.0)) == [VIBRATE_ON]


@given(st.floats(-100, 100), st.floats(-100, 100), st.floats(-100, 100),
       st.floats(-50, 50), st.floats(-50, 50), st.floats(-50, 50))
def test_phase_is_a_function_of_the_worst_ratio(a, b, c, d, e, f):
    # one reading from Normal always ends in one of the three phases, and
    # the phase depends only on the worst component ratio
    guard = ForceGuard()
    reading = ForceReading(a, b, c, d, e, f)
    guard.update(reading)
    ratio, _ = ForceGuard()._worst(reading)
    if ratio >= 1.2:
        assert guard.phase == STOPPED
    elif ratio >= 1.0:
        assert guard.phase == ALERT
    else:
        assert guard.phase == NORMAL
