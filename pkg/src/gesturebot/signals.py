"""Acceleration streams: domain types, window segmentation, synthetic
gestures and trace/corpus persistence.

All accelerations are in g. Traces are sampled nominally at 100 Hz and
clamped to the +-3 g sensor range on ingestion.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClockError,
    InsufficientSamples,
    NoZeroCrossing,
    ParseError,
    UnknownClass,
)

ACCEL_RANGE_G = 3.0

TRANSLATIONS = ("X+", "X-", "Y+", "Y-", "Z+", "Z-")
ROTATIONS = ("RX+", "RX-", "RY+", "RY-", "RZ+", "RZ-")
CLASSES = TRANSLATIONS + ROTATIONS
UNRECOGNIZED = "Unrecognized"

# Default zero-crossing tolerance: raw sensor jitter sits well below this,
# real crossings pass well below it.
EPSILON_ZERO = 0.02

_AXIS_INDEX = {"X": 0, "Y": 1, "Z": 2}


def is_translation(label):
    return label in TRANSLATIONS


def is_rotation(label):
    return label in ROTATIONS


def class_axis(label):
    """(axis index, sign) for a class label, e.g. 'RY-' -> (1, -1.0)."""
    if label not in CLASSES:
        raise UnknownClass(label)
    sign = 1.0 if label.endswith("+") else -1.0
    return _AXIS_INDEX[label.rstrip("+-").lstrip("R")], sign


def clamp_g(v):
    return min(ACCEL_RANGE_G, max(-ACCEL_RANGE_G, v))


@dataclass(frozen=True)
class AccelSample:
    t_ms: int
    ax: float
    ay: float
    az: float
    b_pressed: bool

    def vec(self):
        return np.array([self.ax, self.ay, self.az])


@dataclass(frozen=True)
class AccelTrace:
    samples: tuple
    rate_hz: float = 100.0

    def __post_init__(self):
        last = None
        for s in self.samples:
            if last is not None and s.t_ms <= last:
                raise ClockError("t_ms not strictly increasing at %d" % s.t_ms)
            last = s.t_ms

    def __len__(self):
        return len(self.samples)

    def array(self):
        """(n, 3) raw accelerations."""
        return np.array([[s.ax, s.ay, s.az] for s in self.samples])

    def press_indices(self):
        """Indices where b_pressed transitions false -> true."""
        out = []
        prev = False
        for i, s in enumerate(self.samples):
            if s.b_pressed and not prev:
                out.append(i)
            prev = s.b_pressed
        return out


@dataclass(frozen=True)
class GestureWindow:
    samples: tuple
    origin: int = 0

    def __len__(self):
        return len(self.samples)

    def array(self):
        return np.array([[s.ax, s.ay, s.az] for s in self.samples])

    def means(self):
        """Per-axis mean of the raw accelerations."""
        return self.array().mean(axis=0)

    def comp_means(self):
        """Per-axis mean after gravity compensation."""
        return gravity_compensate(self).mean(axis=0)


def gravity_compensate(window):
    """(n, 3) accelerations with gravity removed under the horizontal-hold
    convention: a = (ax, ay, az - 1)."""
    a = window.array()
    a[:, 2] -= 1.0
    return a


def _check_press(trace, press_index):
    samples = trace.samples
    if not (0 <= press_index < len(samples)):
        raise IndexError("press_index %d out of range" % press_index)
    if not samples[press_index].b_pressed:
        raise ValueError("press_index %d is not a press" % press_index)
    if press_index > 0 and samples[press_index - 1].b_pressed:
        raise ValueError("press_index %d is not a false->true edge" % press_index)


def _hold_length(trace, press_index):
    n = 0
    for s in trace.samples[press_index:]:
        if not s.b_pressed:
            break
        n += 1
    return n


def dominant_axis(comp):
    """Axis with the largest |gravity-compensated| mean over the first
    four samples (or fewer if the window is shorter)."""
    head = comp[: min(4, len(comp))]
    return int(np.argmax(np.abs(head.mean(axis=0))))


def find_zero_crossing(values, epsilon=EPSILON_ZERO):
    """Index of the first zero crossing of a 1-d signal: after the signal
    first leaves the +-epsilon band, the first sample that re-enters it or
    flips sign. Returns None if no crossing occurs."""
    onset = None
    for i, v in enumerate(values):
        if abs(v) >= epsilon:
            onset = i
            break
    if onset is None:
        return None
    s0 = math.copysign(1.0, values[onset])
    for j in range(onset + 1, len(values)):
        v = values[j]
        if abs(v) < epsilon or math.copysign(1.0, v) != s0:
            return j
    return None


def segment_method1(trace, press_index, epsilon=EPSILON_ZERO):
    """Window from the press up to and including the first zero crossing of
    the dominant gravity-compensated axis."""
    _check_press(trace, press_index)
    hold = _hold_length(trace, press_index)
    held = GestureWindow(tuple(trace.samples[press_index:press_index + hold]),
                         origin=press_index)
    comp = gravity_compensate(held)
    axis = dominant_axis(comp)
    cross = find_zero_crossing(comp[:, axis], epsilon)
    if cross is None:
        raise NoZeroCrossing("no zero crossing on axis %d before release" % axis)
    return GestureWindow(held.samples[:cross + 1], origin=press_index)


def segment_method2(trace, press_index):
    """Window of exactly the first four samples starting at the press."""
    _check_press(trace, press_index)
    if press_index + 4 > len(trace.samples):
        raise InsufficientSamples(
            "only %d samples after press" % (len(trace.samples) - press_index))
    return GestureWindow(tuple(trace.samples[press_index:press_index + 4]),
                         origin=press_index)


def segment_for_method(trace, press_index, method, epsilon=EPSILON_ZERO):
    """Segmentation rule for a recognition method (1 uses the zero-crossing
    window, 2 and 3 the first-four-samples window).

    For method 1 a static posture never crosses zero; the whole button hold
    is used as the window in that case.
    """
    if method == 1:
        try:
            return segment_method1(trace, press_index, epsilon)
        except NoZeroCrossing:
            hold = _hold_length(trace, press_index)
            return GestureWindow(
                tuple(trace.samples[press_index:press_index + hold]),
                origin=press_index)
    return segment_method2(trace, press_index)


# --- synthetic gestures ------------------------------------------------------

SYNTH_AMPLITUDE = 0.6       # peak dominant-axis acceleration, g
SYNTH_CROSSING = 8          # samples from press to the zero crossing
SYNTH_LEAD_IN = 5           # rest samples before the press
SYNTH_RZ_AMPLITUDE = 0.4    # per-axis amplitude of the Z-rotation signature

# Static gravity direction for each posture class (see posture module for
# the inverse mapping).
POSTURE_GRAVITY = {
    "RY-": (1.0, 0.0, 0.0),
    "RY+": (-1.0, 0.0, 0.0),
    "RX-": (0.0, 1.0, 0.0),
    "RX+": (0.0, -1.0, 0.0),
}


def generate_synthetic(label, noise_sigma, seed, rate_hz=100.0,
                       amplitude=SYNTH_AMPLITUDE, crossing=SYNTH_CROSSING,
                       lead_in=SYNTH_LEAD_IN):
    """Deterministic synthetic trace for one gesture/posture class.

    Translations follow a full sine lobe on the dominant axis (rises, crosses
    zero at `crossing` samples after the press, then the braking lobe), the
    other axes at rest with gravity on Z. Postures are static with gravity
    rotated onto the convention axis. Z rotations carry a paired X/Y pulse
    so they stay separable from pure translations.

    The press edge is at index `lead_in`.
    """
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be >= 0")
    if label not in CLASSES:
        raise UnknownClass(label)

    if label in POSTURE_GRAVITY:
        base = POSTURE_GRAVITY[label]
        hold = 20
        rows = [base] * (lead_in + hold)
    else:
        base = (0.0, 0.0, 1.0)
        pulse_len = 2 * crossing + 1
        tail = 8
        hold = pulse_len + tail
        rows = [list(base) for _ in range(lead_in + hold)]
        for n in range(pulse_len):
            # positive from the press sample on, zero exactly at `crossing`
            v = math.sin(math.pi * (n + 1) / (crossing + 1))
            i = lead_in + n
            if label in TRANSLATIONS:
                axis, sign = class_axis(label)
                rows[i][axis] += sign * amplitude * v
            else:  # RZ+/RZ-
                sign = 1.0 if label == "RZ+" else -1.0
                rows[i][0] += sign * SYNTH_RZ_AMPLITUDE * v
                rows[i][1] += sign * SYNTH_RZ_AMPLITUDE * v

    rng = np.random.default_rng(seed)
    dt = 1000.0 / rate_hz
    samples = []
    for i, row in enumerate(rows):
        noise = rng.normal(0.0, noise_sigma, 3) if noise_sigma > 0 else (0.0,) * 3
        samples.append(AccelSample(
            t_ms=int(round(i * dt)),
            ax=clamp_g(row[0] + noise[0]),
            ay=clamp_g(row[1] + noise[1]),
            az=clamp_g(row[2] + noise[2]),
            b_pressed=i >= lead_in,
        ))
    return AccelTrace(tuple(samples), rate_hz=rate_hz)


# --- persistence --------------------------------------------------------------

TRACE_HEADER = ["t_ms", "ax", "ay", "az", "b"]


def save_trace(trace, path):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(TRACE_HEADER)
        for s in trace.samples:
            w.writerow([s.t_ms, repr(float(s.ax)), repr(float(s.ay)), repr(float(s.az)),
                        1 if s.b_pressed else 0])


def load_trace(path, rate_hz=100.0):
    samples = []
    last_t = None
    with open(path, newline="") as f:
        for lineno, row in enumerate(csv.reader(f), start=1):
            if lineno == 1:
                if row != TRACE_HEADER:
                    raise ParseError("bad header %r" % (row,), line=1)
                continue
            if not row:
                continue
            if len(row) != 5:
                raise ParseError("expected 5 fields, got %d" % len(row),
                                 line=lineno)
            try:
                t = int(row[0])
                ax, ay, az = (float(v) for v in row[1:4])
                b = row[4].strip()
                if b not in ("0", "1"):
                    raise ValueError(b)
            except ValueError as e:
                raise ParseError("bad field: %s" % e, line=lineno) from e
            if last_t is not None and t <= last_t:
                raise ClockError("t_ms not increasing at line %d" % lineno)
            last_t = t
            samples.append(AccelSample(t, clamp_g(ax), clamp_g(ay),
                                       clamp_g(az), b == "1"))
    return AccelTrace(tuple(samples), rate_hz=rate_hz)


@dataclass
class LabeledCorpus:
    """Windows paired with their class labels."""
    entries: list = field(default_factory=list)

    def add(self, window, label):
        if label not in CLASSES:
            raise UnknownClass(label)
        self.entries.append((window, label))

    def counts(self):
        c = {label: 0 for label in CLASSES}
        for _, label in self.entries:
            c[label] += 1
        return c

    def __len__(self):
        return len(self.entries)


MANIFEST_HEADER = ["trace", "press_index", "label"]


def save_manifest(rows, path):
    """rows: iterable of (trace_path, press_index, label)."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(MANIFEST_HEADER)
        for trace_path, press_index, label in rows:
            w.writerow([trace_path, press_index, label])


def load_manifest(path):
    rows = []
    with open(path, newline="") as f:
        for lineno, row in enumerate(csv.reader(f), start=1):
            if lineno == 1:
                if row != MANIFEST_HEADER:
                    raise ParseError("bad manifest header %r" % (row,), line=1)
                continue
            if not row:
                continue
            if len(row) != 3:
                raise ParseError("expected 3 fields", line=lineno)
            try:
                rows.append((row[0], int(row[1]), row[2]))
            except ValueError as e:
                raise ParseError("bad press index: %s" % e, line=lineno) from e
    return rows


def load_corpus(manifest_path, method, base_dir=None):
    """Load the manifest, segment every trace with the method's window rule."""
    import os

    base = base_dir if base_dir is not None else os.path.dirname(manifest_path)
    corpus = LabeledCorpus()
    for trace_path, press_index, label in load_manifest(manifest_path):
        full = trace_path if os.path.isabs(trace_path) else os.path.join(base, trace_path)
        trace = load_trace(full)
        corpus.add(segment_for_method(trace, press_index, method), label)
    return corpus
