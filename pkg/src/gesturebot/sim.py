"""Simulated robot controller: executes one outstanding incremental linear
move at a configured speed, stops on command or watchdog expiry, and
synthesizes force readings from a virtual contact surface."""

from dataclasses import dataclass

import numpy as np

from .errors import MotorsOff
from .force import ForceReading
from .geometry import Pose

IDLE = "Idle"
MOVING = "Moving"

_EPS = 1e-9


@dataclass(frozen=True)
class ContactSurface:
    z_s: float           # plane height, mm
    stiffness: float     # N/mm

    def __post_init__(self):
        if self.stiffness < 0:
            raise ValueError("stiffness must be >= 0")


class RobotSim:
    def __init__(self, profile, pose=None, contact=None):
        self.profile = profile
        self.pose = pose.copy() if pose is not None else Pose(0.0, 0.0, 1000.0)
        self.contact = contact
        self.motors_on = False
        self.target = None          # Pose when moving
        self.lin_speed = profile.lin_speed
        self.rot_speed = profile.rot_speed
        self.t_ms = 0

    @property
    def moving(self):
        return self.target is not None

    @property
    def motion_phase(self):
        return MOVING if self.moving else IDLE

    def start_move(self, inc, lin_speed=None, rot_speed=None):
        """Begin a linear move to pose + inc. A zero increment is a no-op;
        a new command while moving replaces the target (latest wins)."""
        if not self.motors_on:
            raise MotorsOff("start_move with motors off")
        inc = np.asarray(inc, dtype=float)
        if np.allclose(inc, 0.0):
            return
        self.target = Pose.from_array(self.pose.as_array() + inc)
        if lin_speed is not None:
            self.lin_speed = lin_speed
        if rot_speed is not None:
            self.rot_speed = rot_speed

    def stop_move(self):
        self.target = None

    def tick(self, dt_ms):
        """Advance dt_ms of motion and return the synthesized force reading."""
        if dt_ms <= 0:
            raise ValueError("dt_ms must be > 0")
        self.t_ms += dt_ms
        if self.target is not None:
            dt = dt_ms / 1000.0
            pos = self.pose.position()
            tgt = self.target.position()
            delta = tgt - pos
            dist = float(np.linalg.norm(delta))
            step = self.lin_speed * dt
            if dist <= step + _EPS:
                pos = tgt
            else:
                pos = pos + delta * (step / dist)
            # the increment math targets the boundary; clamp numeric overshoot
            ws = self.profile.workspace
            r = float(np.linalg.norm(pos))
            if r > ws.r_ext:
                pos = pos * (ws.r_ext / r)

            ang = self.pose.angles()
            tga = self.target.angles()
            rstep = self.rot_speed * dt
            for i in range(3):
                d = tga[i] - ang[i]
                if abs(d) <= rstep + _EPS:
                    ang[i] = tga[i]
                else:
                    ang[i] += rstep if d > 0 else -rstep

            self.pose = Pose(pos[0], pos[1], pos[2], ang[0], ang[1], ang[2])
            if (np.allclose(pos, tgt, atol=_EPS)
                    and np.allclose(ang, tga, atol=_EPS)):
                self.target = None
        return self._force_reading()

    def _force_reading(self):
        fz = 0.0
        if self.contact is not None:
            fz = self.contact.stiffness * max(0.0, self.contact.z_s - self.pose.z)
        return ForceReading(fz=fz, t_ms=self.t_ms)

    def watchdog(self, now_ms, last_heartbeat_ms, timeout_ms):
        """Stop the motion when the heartbeat gap exceeds the timeout.
        Returns True when the watchdog fired."""
        if self.moving and now_ms - last_heartbeat_ms > timeout_ms:
            self.stop_move()
            return True
        return False
