"""Field-of-operation geometry: the workspace shell between two
origin-centered spheres, ray casting from the current pose to the shell
boundary, and translation/rotation pose increments."""

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import Degenerate, NotARotation, NotATranslation
from .signals import class_axis, is_rotation, is_translation

MEMBERSHIP_TOL = 1e-6   # relative slack on shell membership checks
DEADBAND_G = 0.05


@dataclass(frozen=True)
class Workspace:
    r_ext: float                      # mm
    r_int: float = 0.0                # mm, 0 disables the interior sphere
    k_max: float = 2012.0             # mm, increment clamp
    rot_limits: tuple = ((-180.0, 180.0),) * 3  # degrees per axis

    def contains(self, p, tol=MEMBERSHIP_TOL):
        r2 = float(np.dot(p, p))
        slack = tol * self.r_ext * self.r_ext
        return (self.r_int ** 2 - slack) <= r2 <= (self.r_ext ** 2 + slack)


@dataclass
class Pose:
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    rx: float = 0.0
    ry: float = 0.0
    rz: float = 0.0

    def position(self):
        return np.array([self.x, self.y, self.z])

    def angles(self):
        return np.array([self.rx, self.ry, self.rz])

    def as_array(self):
        return np.array([self.x, self.y, self.z, self.rx, self.ry, self.rz])

    @staticmethod
    def from_array(a):
        return Pose(*(float(v) for v in a))

    def copy(self):
        return replace(self)


@dataclass(frozen=True)
class RobotProfile:
    name: str
    workspace: Workspace
    lin_speed: float = 75.0   # mm/s
    rot_speed: float = 20.0   # deg/s


PROFILES = {
    # reach profile with the increment clamp k in [0, 2012]
    "hp6": RobotProfile("hp6", Workspace(r_ext=2012.0, k_max=2012.0)),
    # smaller-reach profile demonstrating per-robot customization
    "irb140": RobotProfile("irb140", Workspace(r_ext=810.0, k_max=810.0),
                           lin_speed=50.0),
}


def load_profile(name_or_path):
    if name_or_path in PROFILES:
        return PROFILES[name_or_path]
    with open(name_or_path) as f:
        d = json.load(f)
    ws = Workspace(
        r_ext=float(d["r_ext"]),
        r_int=float(d.get("r_int", 0.0)),
        k_max=float(d.get("k_max", d["r_ext"])),
        rot_limits=tuple(tuple(float(v) for v in lim)
                         for lim in d.get("rot_limits", ((-180, 180),) * 3)),
    )
    return RobotProfile(name=d.get("name", "custom"), workspace=ws,
                        lin_speed=float(d.get("lin_speed", 75.0)),
                        rot_speed=float(d.get("rot_speed", 20.0)))


def save_profile(profile, path):
    d = {
        "name": profile.name,
        "r_ext": profile.workspace.r_ext,
        "r_int": profile.workspace.r_int,
        "k_max": profile.workspace.k_max,
        "rot_limits": [list(lim) for lim in profile.workspace.rot_limits],
        "lin_speed": profile.lin_speed,
        "rot_speed": profile.rot_speed,
    }
    with open(path, "w") as f:
        json.dump(d, f, indent=2)
        f.write("\n")


def normalize_direction(a, deadband=DEADBAND_G):
    """Unit direction from a gravity-compensated mean acceleration, or None
    when the motion is inside the deadband."""
    a = np.asarray(a, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm < deadband:
        return None
    return a / norm


def class_to_direction(label):
    """+-unit basis vector for a translation class, e.g. Y+ -> (0, 1, 0)."""
    if not is_translation(label):
        raise NotATranslation(label)
    axis, sign = class_axis(label)
    u = np.zeros(3)
    u[axis] = sign
    return u


def _positive_sphere_root(p, u, radius, smallest):
    """Positive k with |p + k*u| = radius, or None. With `smallest` the
    nearer positive root is returned (interior sphere), otherwise the far
    root (exterior sphere, p inside)."""
    b = float(np.dot(p, u))
    c = float(np.dot(p, p)) - radius * radius
    disc = b * b - c
    if disc < 0:
        return None
    sq = math.sqrt(disc)
    roots = sorted((-b - sq, -b + sq))
    eps = 1e-9
    if smallest:
        for k in roots:
            if k > eps:
                return k
        return None
    return roots[1] if roots[1] > eps else None


def ray_workspace_exit(ws, position, u):
    """Distance k along u from `position` to the shell boundary, clamped to
    [0, k_max]. The interior sphere wins when the ray hits it; otherwise the
    exterior sphere limits the motion."""
    p = np.asarray(position, dtype=float)
    u = np.asarray(u, dtype=float)
    if not ws.contains(p):
        raise Degenerate("position %s outside workspace shell" % (p,))
    k = None
    if ws.r_int > 0:
        k = _positive_sphere_root(p, u, ws.r_int, smallest=True)
    if k is None:
        k = _positive_sphere_root(p, u, ws.r_ext, smallest=False)
        if k is None:
            # origin-centered exterior sphere always encloses a valid pose
            k = 0.0
    return min(max(k, 0.0), ws.k_max)


def translation_increment(ws, position, u):
    """[i1..i6] moving along u to the workspace boundary; None direction
    (deadband) yields the zero increment."""
    inc = np.zeros(6)
    if u is None:
        return inc
    k = ray_workspace_exit(ws, position, u)
    inc[:3] = k * np.asarray(u, dtype=float)
    return inc


def rotation_increment(ws, pose, label):
    """[i1..i6] rotating the single matching axis to its limit in the
    class's sign direction."""
    if not is_rotation(label):
        raise NotARotation(label)
    axis, sign = class_axis(label)
    lo, hi = ws.rot_limits[axis]
    current = pose.angles()[axis]
    target = hi if sign > 0 else lo
    inc = np.zeros(6)
    inc[3 + axis] = target - current
    return inc
