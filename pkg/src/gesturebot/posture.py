"""Static posture detection from the gravity direction: Rx+-, Ry+- and
horizontal rest. Z rotations leave gravity on Z and are undetectable here;
they are routed to the ANN by the session."""

from dataclasses import dataclass

import numpy as np

HORIZONTAL = "Horizontal"
INDETERMINATE = "Indeterminate"

# (axis index, sign of mean) -> posture. The X pairing is fixed by the
# gravity-onto-X convention (+X while rotated about Y one way, -X the other);
# the Y pairing is a configurable convention.
DEFAULT_CONVENTION = {
    (0, 1): "RY-",
    (0, -1): "RY+",
    (1, 1): "RX-",
    (1, -1): "RX+",
    (2, 1): HORIZONTAL,
    # (2, -1): upside down, Indeterminate
}


@dataclass(frozen=True)
class PostureThresholds:
    static_sigma: float = 0.08   # per-axis stdev ceiling for "static", g
    dominant_min: float = 0.8    # |mean| floor on the gravity axis, g
    minor_max: float = 0.3       # |mean| ceiling on the other axes, g


@dataclass(frozen=True)
class PostureReading:
    posture: str
    gravity_axis: str  # e.g. "+z", "-x", or "" when indeterminate


def is_static(window, thresholds=PostureThresholds()):
    return bool(np.all(window.array().std(axis=0) <= thresholds.static_sigma))


def detect_posture(window, thresholds=PostureThresholds(),
                   convention=DEFAULT_CONVENTION):
    """Map a static window's dominant gravity axis to a posture.

    Non-static windows and windows without a single dominant axis are
    Indeterminate, never a posture.
    """
    a = window.array()
    if not np.all(a.std(axis=0) <= thresholds.static_sigma):
        return PostureReading(INDETERMINATE, "")
    means = a.mean(axis=0)
    mags = np.abs(means)
    dominant = [i for i in range(3) if mags[i] >= thresholds.dominant_min]
    if len(dominant) != 1:
        return PostureReading(INDETERMINATE, "")
    axis = dominant[0]
    if any(mags[i] > thresholds.minor_max for i in range(3) if i != axis):
        return PostureReading(INDETERMINATE, "")
    sign = 1 if means[axis] > 0 else -1
    posture = convention.get((axis, sign), INDETERMINATE)
    tag = ("+" if sign > 0 else "-") + "xyz"[axis]
    return PostureReading(posture, tag if posture != INDETERMINATE else "")


def rz_requires_ann():
    """Gravity is unchanged by rotation about Z, so Rz+- can never come from
    this detector; the session must route them to the ANN."""
    return True
