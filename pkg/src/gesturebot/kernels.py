"""Hot numeric kernels for MLP training and inference.

The online-backprop training loop dominates runtime (millions of per-pattern
updates), so it is compiled with numba when available. Setting the
environment variable GESTUREBOT_NO_NUMBA=1 selects the pure-numpy fallback;
benchmarks/bench_kernels.py compares the two paths.
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("GESTUREBOT_NO_NUMBA", "").lower() not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def forward_pass(w1, b1, w2, b2, x):
    """(hidden, output) activations for one input vector."""
    h = sigmoid(w1 @ x + b1)
    o = sigmoid(w2 @ h + b2)
    return h, o


def _train_cycles_loops(w1, b1, w2, b2, vw1, vb1, vw2, vb2,
                        xs, ts, orders, lr, mom, mse_out):
    """Online backprop with momentum; explicit loops for numba.

    orders: (cycles, n) int64 pattern visit order per cycle. Weights and
    velocity arrays are updated in place; mse_out[c] receives the mean
    squared output error observed during cycle c (pre-update per pattern).
    """
    n_hidden = b1.shape[0]
    n_out = b2.shape[0]
    n_in = w1.shape[1]
    n = xs.shape[0]
    h = np.empty(n_hidden)
    o = np.empty(n_out)
    delta_o = np.empty(n_out)
    delta_h = np.empty(n_hidden)

    for c in range(orders.shape[0]):
        sq = 0.0
        for idx in range(n):
            p = orders[c, idx]
            x = xs[p]
            t = ts[p]
            for i in range(n_hidden):
                acc = b1[i]
                for j in range(n_in):
                    acc += w1[i, j] * x[j]
                h[i] = 1.0 / (1.0 + np.exp(-acc))
            for i in range(n_out):
                acc = b2[i]
                for j in range(n_hidden):
                    acc += w2[i, j] * h[j]
                o[i] = 1.0 / (1.0 + np.exp(-acc))

            for i in range(n_out):
                e = o[i] - t[i]
                sq += e * e
                delta_o[i] = e * o[i] * (1.0 - o[i])
            for j in range(n_hidden):
                acc = 0.0
                for i in range(n_out):
                    acc += w2[i, j] * delta_o[i]
                delta_h[j] = acc * h[j] * (1.0 - h[j])

            for i in range(n_out):
                d = delta_o[i]
                for j in range(n_hidden):
                    vw2[i, j] = -lr * d * h[j] + mom * vw2[i, j]
                    w2[i, j] += vw2[i, j]
                vb2[i] = -lr * d + mom * vb2[i]
                b2[i] += vb2[i]
            for i in range(n_hidden):
                d = delta_h[i]
                for j in range(n_in):
                    vw1[i, j] = -lr * d * x[j] + mom * vw1[i, j]
                    w1[i, j] += vw1[i, j]
                vb1[i] = -lr * d + mom * vb1[i]
                b1[i] += vb1[i]
        mse_out[c] = sq / (n * n_out)


def _train_cycles_numpy(w1, b1, w2, b2, vw1, vb1, vw2, vb2,
                        xs, ts, orders, lr, mom, mse_out):
    """Same update sequence as the loop kernel, per-pattern numpy ops."""
    n = xs.shape[0]
    n_out = b2.shape[0]
    for c in range(orders.shape[0]):
        sq = 0.0
        for p in orders[c]:
            x = xs[p]
            t = ts[p]
            h = sigmoid(w1 @ x + b1)
            o = sigmoid(w2 @ h + b2)
            e = o - t
            sq += float(e @ e)
            delta_o = e * o * (1.0 - o)
            delta_h = (w2.T @ delta_o) * h * (1.0 - h)

            vw2 *= mom
            vw2 -= lr * np.outer(delta_o, h)
            w2 += vw2
            vb2 *= mom
            vb2 -= lr * delta_o
            b2 += vb2
            vw1 *= mom
            vw1 -= lr * np.outer(delta_h, x)
            w1 += vw1
            vb1 *= mom
            vb1 -= lr * delta_h
            b1 += vb1
        mse_out[c] = sq / (n * n_out)


if USE_NUMBA:
    train_cycles = njit(cache=True)(_train_cycles_loops)
    BACKEND = "numba"
else:
    train_cycles = _train_cycles_numpy
    BACKEND = "numpy"
