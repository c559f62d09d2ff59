"""Force/torque guard: alert (vibrate) when any component reaches the alert
level, stop when it reaches the stop level alert*(1+p), release the alert
when the force falls back."""

from dataclasses import dataclass

from .errors import NotStopped

NORMAL = "Normal"
ALERT = "Alert"
STOPPED = "Stopped"

VIBRATE_ON = "vibrate_on"
VIBRATE_OFF = "vibrate_off"
STOP_ROBOT = "stop_robot"

COMPONENTS = ("fx", "fy", "fz", "tx", "ty", "tz")


@dataclass(frozen=True)
class ForceReading:
    fx: float = 0.0
    fy: float = 0.0
    fz: float = 0.0
    tx: float = 0.0
    ty: float = 0.0
    tz: float = 0.0
    t_ms: int = 0

    def components(self):
        return (self.fx, self.fy, self.fz, self.tx, self.ty, self.tz)


@dataclass(frozen=True)
class ForceThresholds:
    f_za: float = 10.0         # alert level for force components, N
    f_za_torque: float = 5.0   # alert level for torque components, N*m
    p: float = 0.2             # stop margin fraction, in [0, 1]

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be in [0, 1]")

    @property
    def f_zl(self):
        return self.f_za * (1.0 + self.p)

    @property
    def f_zl_torque(self):
        return self.f_za_torque * (1.0 + self.p)


class ForceGuard:
    """Phase machine over force readings. A static tare captured at session
    start is subtracted so the tool weight does not count toward the
    thresholds. Stopped absorbs all readings until reset."""

    def __init__(self, thresholds=ForceThresholds(), tare=None):
        self.thresholds = thresholds
        self.tare = tare or ForceReading()
        self.phase = NORMAL
        self.offending = None

    def _worst(self, reading):
        """(max alert-level ratio, component tag)."""
        th = self.thresholds
        worst, tag = 0.0, None
        for i, name in enumerate(COMPONENTS):
            limit = th.f_za if i < 3 else th.f_za_torque
            ratio = abs(reading.components()[i] - self.tare.components()[i]) / limit
            if ratio > worst:
                worst, tag = ratio, name
        return worst, tag

    def update(self, reading):
        """Advance the phase for one reading; returns the effect list."""
        if self.phase == STOPPED:
            return []
        ratio, tag = self._worst(reading)
        effects = []
        if ratio >= 1.0 + self.thresholds.p:
            if self.phase == NORMAL:
                effects.append(VIBRATE_ON)  # alert is implied on the way to stop
            self.phase = STOPPED
            self.offending = tag
            effects += [STOP_ROBOT, VIBRATE_OFF]
        elif ratio >= 1.0:
            if self.phase == NORMAL:
                self.phase = ALERT
                self.offending = tag
                effects.append(VIBRATE_ON)
        else:
            if self.phase == ALERT:
                self.phase = NORMAL
                self.offending = None
                effects.append(VIBRATE_OFF)
        return effects

    def reset(self):
        if self.phase != STOPPED:
            raise NotStopped("guard phase is %s" % self.phase)
        self.phase = NORMAL
        self.offending = None
