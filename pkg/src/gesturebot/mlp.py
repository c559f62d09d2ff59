"""12-20-12 sigmoid feedforward network trained with online backpropagation
plus momentum; detection at 0.5 output activation, acceptance at a
configurable confidence threshold (default 0.8)."""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (
    DivergenceDetected,
    EmptyClass,
    ParseError,
    WrongWindowLength,
)
from .signals import ACCEL_RANGE_G, CLASSES, UNRECOGNIZED

LAYER_SIZES = (12, 20, 12)

DETECT_THRESHOLD = 0.5
ACCEPT_THRESHOLD = 0.8

# Hard stop if the per-cycle MSE regresses past this factor of the initial MSE.
DIVERGENCE_FACTOR = 10.0

_CYCLE_CHUNK = 1  # cycles per kernel call; 1 keeps early stop exact


@dataclass
class TrainConfig:
    learning_rate: float = 0.25
    momentum: float = 0.1
    max_cycles: int = 100000
    target_mse: float = None   # early stop disabled when None
    seed: int = 0


@dataclass
class MlpModel:
    w1: np.ndarray   # (20, 12)
    b1: np.ndarray   # (20,)
    w2: np.ndarray   # (12, 20)
    b2: np.ndarray   # (12,)
    class_order: tuple = CLASSES
    layer_sizes: tuple = LAYER_SIZES


@dataclass
class Recognition:
    label: str
    confidence: float
    raw_outputs: np.ndarray = field(repr=False, default=None)


@dataclass
class TrainReport:
    cycles_run: int
    final_mse: float
    mse_history: list


def encode_input(window):
    """[ax1, ay1, az1, ..., ax4, ay4, az4] scaled by the sensor range
    into [-1, 1]."""
    if len(window) != 4:
        raise WrongWindowLength("expected 4 samples, got %d" % len(window))
    return window.array().reshape(12) / ACCEL_RANGE_G


def forward(model, x):
    """12 output activations for a 12-vector input."""
    x = np.asarray(x, dtype=float)
    if x.shape != (12,):
        raise ValueError("input must be a 12-vector")
    _, o = kernels.forward_pass(model.w1, model.b1, model.w2, model.b2, x)
    return o


def init_model(seed):
    rs = np.random.RandomState(seed)
    n_in, n_hid, n_out = LAYER_SIZES
    return MlpModel(
        w1=rs.uniform(-0.5, 0.5, (n_hid, n_in)),
        b1=rs.uniform(-0.5, 0.5, n_hid),
        w2=rs.uniform(-0.5, 0.5, (n_out, n_hid)),
        b2=rs.uniform(-0.5, 0.5, n_out),
    )


def _encode_corpus(corpus):
    idx = {label: i for i, label in enumerate(CLASSES)}
    xs, ts = [], []
    for window, label in corpus.entries:
        xs.append(encode_input(window))
        t = np.zeros(len(CLASSES))
        t[idx[label]] = 1.0
        ts.append(t)
    return np.array(xs), np.array(ts)


def train_ann(corpus, config=None):
    """Train on one-hot targets with per-pattern updates, corpus order
    shuffled each cycle from the config seed. Deterministic for a fixed
    seed and kernel backend."""
    config = config or TrainConfig()
    counts = corpus.counts()
    missing = [label for label in CLASSES if counts[label] == 0]
    if missing:
        raise EmptyClass(missing)

    xs, ts = _encode_corpus(corpus)
    n = len(xs)
    rs = np.random.RandomState(config.seed)
    model = MlpModel(
        w1=rs.uniform(-0.5, 0.5, (LAYER_SIZES[1], LAYER_SIZES[0])),
        b1=rs.uniform(-0.5, 0.5, LAYER_SIZES[1]),
        w2=rs.uniform(-0.5, 0.5, (LAYER_SIZES[2], LAYER_SIZES[1])),
        b2=rs.uniform(-0.5, 0.5, LAYER_SIZES[2]),
    )
    vw1 = np.zeros_like(model.w1)
    vb1 = np.zeros_like(model.b1)
    vw2 = np.zeros_like(model.w2)
    vb2 = np.zeros_like(model.b2)

    history = []
    initial_mse = None
    cycles = 0
    mse_out = np.zeros(_CYCLE_CHUNK)
    while cycles < config.max_cycles:
        chunk = min(_CYCLE_CHUNK, config.max_cycles - cycles)
        orders = np.array([rs.permutation(n) for _ in range(chunk)], dtype=np.int64)
        kernels.train_cycles(model.w1, model.b1, model.w2, model.b2,
                             vw1, vb1, vw2, vb2, xs, ts, orders,
                             config.learning_rate, config.momentum,
                             mse_out[:chunk])
        for c in range(chunk):
            mse = float(mse_out[c])
            history.append(mse)
            cycles += 1
            if not np.isfinite(mse):
                raise DivergenceDetected("MSE non-finite at cycle %d" % cycles)
            if initial_mse is None:
                initial_mse = mse
            elif mse > DIVERGENCE_FACTOR * initial_mse:
                raise DivergenceDetected(
                    "MSE %.3g exceeds %gx initial at cycle %d"
                    % (mse, DIVERGENCE_FACTOR, cycles))
        if config.target_mse is not None and history[-1] <= config.target_mse:
            break
    return model, TrainReport(cycles_run=cycles, final_mse=history[-1],
                              mse_history=history)


def classify_ann(model, window, accept_threshold=ACCEPT_THRESHOLD):
    """Argmax over outputs; below 0.5 nothing is detected, below the accept
    threshold the detection is rejected as low-confidence."""
    o = forward(model, encode_input(window))
    winner = int(np.argmax(o))
    conf = float(o[winner])
    if conf < DETECT_THRESHOLD or conf < accept_threshold:
        return Recognition(UNRECOGNIZED, conf, o)
    return Recognition(model.class_order[winner], conf, o)


# --- gradient verification ---------------------------------------------------

def batch_error(model, xs, ts):
    """E = 0.5 * sum of squared output errors over the batch."""
    e = 0.0
    for x, t in zip(xs, ts):
        o = forward(model, x)
        e += 0.5 * float((o - t) @ (o - t))
    return e


def batch_gradients(model, xs, ts):
    """Analytic dE/dw for the batch error, same E as batch_error."""
    gw1 = np.zeros_like(model.w1)
    gb1 = np.zeros_like(model.b1)
    gw2 = np.zeros_like(model.w2)
    gb2 = np.zeros_like(model.b2)
    for x, t in zip(xs, ts):
        h, o = kernels.forward_pass(model.w1, model.b1, model.w2, model.b2, x)
        delta_o = (o - t) * o * (1.0 - o)
        delta_h = (model.w2.T @ delta_o) * h * (1.0 - h)
        gw2 += np.outer(delta_o, h)
        gb2 += delta_o
        gw1 += np.outer(delta_h, x)
        gb1 += delta_h
    return gw1, gb1, gw2, gb2


def gradient_check(model, xs, ts, n_probes=60, step=1e-4, seed=0):
    """Max relative error between analytic gradients and central finite
    differences over a random parameter subset."""
    xs = np.asarray(xs, dtype=float)
    ts = np.asarray(ts, dtype=float)
    if len(xs) == 0:
        raise ValueError("empty batch")
    analytic = batch_gradients(model, xs, ts)
    params = [model.w1, model.b1, model.w2, model.b2]
    rs = np.random.RandomState(seed)
    worst = 0.0
    for _ in range(n_probes):
        k = rs.randint(len(params))
        arr = params[k]
        flat_i = rs.randint(arr.size)
        idx = np.unravel_index(flat_i, arr.shape)
        orig = arr[idx]
        arr[idx] = orig + step
        e_plus = batch_error(model, xs, ts)
        arr[idx] = orig - step
        e_minus = batch_error(model, xs, ts)
        arr[idx] = orig
        numeric = (e_plus - e_minus) / (2.0 * step)
        a = analytic[k][idx]
        denom = max(abs(a), abs(numeric), 1e-8)
        worst = max(worst, abs(a - numeric) / denom)
    return worst


# --- persistence ---------------------------------------------------------------

def _write_array(f, name, arr):
    f.write("%s %s\n" % (name, " ".join(str(d) for d in arr.shape)))
    for row in arr.reshape(-1, arr.shape[-1]) if arr.ndim > 1 else [arr]:
        f.write(" ".join(repr(float(v)) for v in row) + "\n")


def save_model(model, path):
    with open(path, "w") as f:
        f.write("mlp v1\n")
        f.write("layers %d %d %d\n" % model.layer_sizes)
        f.write("classes %s\n" % " ".join(model.class_order))
        _write_array(f, "w1", model.w1)
        _write_array(f, "b1", model.b1)
        _write_array(f, "w2", model.w2)
        _write_array(f, "b2", model.b2)


def load_model(path):
    with open(path) as f:
        lines = [ln.rstrip("\n") for ln in f]
    if not lines or lines[0] != "mlp v1":
        raise ParseError("not an mlp model file", line=1)
    layers = tuple(int(v) for v in lines[1].split()[1:])
    classes = tuple(lines[2].split()[1:])
    pos = 3
    arrays = {}
    for name in ("w1", "b1", "w2", "b2"):
        header = lines[pos].split()
        if header[0] != name:
            raise ParseError("expected %s section" % name, line=pos + 1)
        shape = tuple(int(v) for v in header[1:])
        pos += 1
        nrows = shape[0] if len(shape) == 2 else 1
        rows = []
        for _ in range(nrows):
            rows.append([float(v) for v in lines[pos].split()])
            pos += 1
        arr = np.array(rows)
        arrays[name] = arr.reshape(shape)
    return MlpModel(w1=arrays["w1"], b1=arrays["b1"],
                    w2=arrays["w2"], b2=arrays["b2"],
                    class_order=classes, layer_sizes=layers)
