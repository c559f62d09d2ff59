"""Independent oracles shared by unit and acceptance tests."""

import numpy as np

from gesturebot.signals import AccelSample, AccelTrace, GestureWindow


def exit_by_bisection(ws, p, u, march_step=1.0, tol=1e-9):
    """Distance to the shell boundary along u, found purely from the
    membership predicate: march until membership first fails, then bisect.
    Returns None if membership holds out to k_max + one march step."""
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=float)
    k_hi = ws.r_ext * 2.0 + march_step
    ks = np.arange(0.0, k_hi, march_step)
    pts = p[None, :] + ks[:, None] * u[None, :]
    r2 = np.einsum("ij,ij->i", pts, pts)
    inside = (r2 >= ws.r_int ** 2 - 1e-9) & (r2 <= ws.r_ext ** 2 + 1e-9)
    fail = np.nonzero(~inside)[0]
    if len(fail) == 0:
        return None
    i = fail[0]
    lo, hi = (0.0, 0.0) if i == 0 else (ks[i - 1], ks[i])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        q = p + mid * u
        r2m = float(q @ q)
        if ws.r_int ** 2 <= r2m <= ws.r_ext ** 2:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def make_trace(ax_values, ay=0.0, az=1.0, b_from=0, rate_hz=100.0,
               release_at=None):
    """Trace with a scripted ax series; b pressed from index b_from, released
    at release_at (exclusive) if given."""
    samples = []
    for i, ax in enumerate(ax_values):
        pressed = i >= b_from
        if release_at is not None and i >= release_at:
            pressed = False
        samples.append(AccelSample(i * 10, ax, ay, az, pressed))
    return AccelTrace(tuple(samples), rate_hz=rate_hz)


def const_window(ax, ay, az, n=4):
    return GestureWindow(tuple(
        AccelSample(i * 10, ax, ay, az, True) for i in range(n)))
