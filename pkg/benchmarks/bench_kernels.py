"""Compare the numba-compiled training kernel against the pure-numpy
fallback on a realistic workload (360 patterns, 200 cycles), and check
that both produce numerically identical weights.

Run: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from gesturebot import kernels

N_PATTERNS = 360   # 30 per class x 12 classes
CYCLES = 200
LR, MOM = 0.25, 0.1


def make_workload(seed=0):
    rs = np.random.RandomState(seed)
    xs = rs.uniform(-1, 1, (N_PATTERNS, 12))
    ts = np.eye(12)[rs.randint(0, 12, N_PATTERNS)]
    orders = np.array([rs.permutation(N_PATTERNS) for _ in range(CYCLES)],
                      dtype=np.int64)
    return xs, ts, orders


def run(kernel, xs, ts, orders):
    rs = np.random.RandomState(1)
    w1 = rs.uniform(-0.5, 0.5, (20, 12))
    b1 = rs.uniform(-0.5, 0.5, 20)
    w2 = rs.uniform(-0.5, 0.5, (12, 20))
    b2 = rs.uniform(-0.5, 0.5, 12)
    v = [np.zeros_like(a) for a in (w1, b1, w2, b2)]
    mse = np.zeros(CYCLES)
    t0 = time.perf_counter()
    kernel(w1, b1, w2, b2, *v, xs, ts, orders, LR, MOM, mse)
    elapsed = time.perf_counter() - t0
    return (w1, b1, w2, b2), mse, elapsed


def main():
    xs, ts, orders = make_workload()
    updates = N_PATTERNS * CYCLES

    if kernels.USE_NUMBA:
        fast = kernels.train_cycles
        # warm up the JIT so compile time is not billed to the benchmark
        run(fast, xs[:4], ts[:4], orders[:1, :4].copy())
        params_fast, mse_fast, t_fast = run(fast, xs, ts, orders)
        label = "numba"
    else:
        print("numba disabled (GESTUREBOT_NO_NUMBA); timing numpy only")
        params_fast, mse_fast, t_fast = None, None, None
        label = None

    params_np, mse_np, t_np = run(kernels._train_cycles_numpy, xs, ts, orders)
    print("numpy : %7.3f s  (%.0f updates/s)" % (t_np, updates / t_np))

    if params_fast is not None:
        print("%-6s: %7.3f s  (%.0f updates/s)  speedup x%.1f"
              % (label, t_fast, updates / t_fast, t_np / t_fast))
        agree = all(np.allclose(a, b, atol=1e-12, rtol=0)
                    for a, b in zip(params_fast, params_np))
        agree = agree and np.allclose(mse_fast, mse_np, atol=1e-12, rtol=0)
        print("backends agree to 1e-12: %s" % agree)
        if not agree:
            raise SystemExit(1)


if __name__ == "__main__":
    main()
