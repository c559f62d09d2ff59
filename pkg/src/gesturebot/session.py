"""Teach session orchestrator: B-button semantics, window routing to the
recognizers and the posture detector, increment computation, the
confidence-gated text command channel, waypoint capture, program
generation and replay."""

import time
from dataclasses import dataclass, field

from . import force as force_mod
from .errors import (
    EmptyProgram,
    GuardStopped,
    MotorsOff,
    NotStopped,
    ParseError,
    UnknownVerb,
)
from .force import ForceGuard, ForceThresholds
from .geometry import (
    Pose,
    class_to_direction,
    load_profile,
    normalize_direction,
    rotation_increment,
    translation_increment,
)
from .mlp import classify_ann
from .posture import PostureThresholds, detect_posture
from .sim import ContactSurface, RobotSim
from .signals import (
    UNRECOGNIZED,
    GestureWindow,
    dominant_axis,
    find_zero_crossing,
    gravity_compensate,
    is_rotation,
)
from .statmodel import classify_stat

COMMAND_VERBS = (
    "ROBOT MOTORS ON",
    "ROBOT MOTORS OFF",
    "COMPUTER MOVE LINE",
    "COMPUTER SET SPEED",
    "COMPUTER MODE",
    "COMPUTER GUARD RESET",
    "COMPUTER GENERATE",
    "COMPUTER RUN",
)


@dataclass
class SessionConfig:
    mode: int = 1                       # 1 axis-separated, 2 free direction
    method: int = 3                     # recognizer: 1/2 statistical, 3 ANN
    accept_threshold: float = 0.8
    command_confidence_min: float = 0.70
    profile: str = "hp6"
    lin_speed: float = None             # None: profile default
    rot_speed: float = None
    deadband: float = 0.05              # g, mode-2 no-motion threshold
    watchdog_timeout_ms: int = 200
    tick_ms: int = 10
    program_name: str = "DEMO"
    initial_pose: tuple = (0.0, 0.0, 1000.0, 0.0, 0.0, 0.0)
    posture_thresholds: PostureThresholds = field(default_factory=PostureThresholds)
    force_thresholds: ForceThresholds = field(default_factory=ForceThresholds)
    contact_z: float = None             # mm; None disables the contact surface
    contact_stiffness: float = 5.0      # N/mm


@dataclass
class Waypoint:
    index: int
    pose: Pose
    speed: float
    motion_kind: str = "Line"


@dataclass(frozen=True)
class ProgramStatement:
    pose: Pose
    v: float


@dataclass(frozen=True)
class RobotProgram:
    name: str
    profile: str
    statements: tuple


def program_text(program):
    lines = ["PROGRAM %s PROFILE %s" % (program.name, program.profile)]
    for s in program.statements:
        lines.append(
            "MOVL X=%.6f Y=%.6f Z=%.6f RX=%.6f RY=%.6f RZ=%.6f V=%.6f"
            % (s.pose.x, s.pose.y, s.pose.z, s.pose.rx, s.pose.ry, s.pose.rz, s.v))
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_program(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("PROGRAM "):
        raise ParseError("missing PROGRAM header", line=1)
    head = lines[0].split()
    if len(head) != 4 or head[2] != "PROFILE":
        raise ParseError("bad PROGRAM header", line=1)
    if lines[-1] != "END":
        raise ParseError("missing END footer", line=len(lines))
    statements = []
    for i, ln in enumerate(lines[1:-1], start=2):
        parts = ln.split()
        if parts[0] != "MOVL" or len(parts) != 8:
            raise ParseError("bad statement %r" % ln, line=i)
        vals = {}
        for p in parts[1:]:
            key, _, sval = p.partition("=")
            vals[key] = float(sval)
        statements.append(ProgramStatement(
            pose=Pose(vals["X"], vals["Y"], vals["Z"],
                      vals["RX"], vals["RY"], vals["RZ"]),
            v=vals["V"]))
    return RobotProgram(name=head[1], profile=head[3], statements=tuple(statements))


class TeachSession:
    """Single logical event loop over samples, commands and sim ticks.

    Outbound Telemetry/Effect events are appended to `outbox` as
    (kind, payload) pairs in emission order; the gateway drains it.
    """

    def __init__(self, config=None, stat_model=None, mlp_model=None):
        self.config = config or SessionConfig()
        self.profile = load_profile(self.config.profile)
        contact = None
        if self.config.contact_z is not None:
            contact = ContactSurface(self.config.contact_z,
                                     self.config.contact_stiffness)
        self.sim = RobotSim(self.profile,
                            pose=Pose(*self.config.initial_pose),
                            contact=contact)
        if self.config.lin_speed is not None:
            self.sim.lin_speed = self.config.lin_speed
        if self.config.rot_speed is not None:
            self.sim.rot_speed = self.config.rot_speed
        self.guard = ForceGuard(self.config.force_thresholds)
        self.stat_model = stat_model
        self.mlp_model = mlp_model

        self.clock = 0
        self.last_heartbeat = 0
        self.outbox = []
        self.waypoints = []
        self.last_recognition = (UNRECOGNIZED, 0.0)
        self.last_latency_ms = None
        self._b_down = False
        self._capture = None      # list of samples while a window is pending
        self._capture_done = False
        self._last_accel = (0.0, 0.0, 1.0)
        self._replaying = False

    # --- outbound --------------------------------------------------------

    def emit(self, kind, payload):
        self.outbox.append((kind, payload))

    def _notice(self, text):
        self.emit("Effect", {"effect": "notice", "text": text, "t_ms": self.clock})

    def _emit_telemetry(self):
        label, conf = self.last_recognition
        self.emit("Telemetry", {
            "t_ms": self.clock,
            "pose": [round(v, 9) for v in self.sim.pose.as_array()],
            "motion": self.sim.motion_phase,
            "guard": self.guard.phase,
            "motors": self.sim.motors_on,
            "recognition": [label, round(conf, 6)],
            "waypoints": len(self.waypoints),
        })

    # --- time ------------------------------------------------------------

    def advance(self, t_ms):
        """Run sim ticks up to t_ms of session time."""
        while self.clock + self.config.tick_ms <= t_ms:
            self._tick()

    def _tick(self):
        self.clock += self.config.tick_ms
        if self._replaying:
            self.last_heartbeat = self.clock
        reading = self.sim.tick(self.config.tick_ms)
        for effect in self.guard.update(reading):
            if effect == force_mod.STOP_ROBOT:
                self.sim.stop_move()
                self.emit("Effect", {"effect": "stop", "reason": "guard",
                                     "component": self.guard.offending,
                                     "t_ms": self.clock})
            else:
                self.emit("Effect", {"effect": effect, "t_ms": self.clock})
        if not self._replaying:
            if self.sim.watchdog(self.clock, self.last_heartbeat,
                                 self.config.watchdog_timeout_ms):
                self.emit("Effect", {"effect": "stop", "reason": "watchdog",
                                     "t_ms": self.clock})
        self._emit_telemetry()

    # --- inbound ---------------------------------------------------------

    def heartbeat(self, t_ms):
        self.advance(t_ms)
        self.last_heartbeat = t_ms

    def handle_sample(self, sample):
        self.advance(sample.t_ms)
        self.last_heartbeat = sample.t_ms
        self._last_accel = (sample.ax, sample.ay, sample.az)
        if sample.b_pressed and not self._b_down:
            self._on_press(sample)
        elif not sample.b_pressed and self._b_down:
            self._on_release()
        elif sample.b_pressed and self._capture is not None:
            self._capture.append(sample)
            self._check_capture()
        self._b_down = sample.b_pressed

    def handle_button_edge(self, t_ms, pressed):
        """Explicit edge without a fresh accel sample (reuses the last one)."""
        from .signals import AccelSample

        ax, ay, az = self._last_accel
        self.handle_sample(AccelSample(t_ms, ax, ay, az, pressed))

    def _on_press(self, sample):
        if self.sim.moving:
            return  # one gesture per hold; motion still running
        self._capture = [sample]
        self._capture_done = False
        self._check_capture()

    def _on_release(self):
        self.sim.stop_move()
        if self._capture is not None and not self._capture_done:
            self._notice("capture aborted before recognition")
        self._capture = None
        self._capture_done = False

    def _check_capture(self):
        if self._capture is None or self._capture_done:
            return
        window = None
        if len(self._capture) == 4:
            head = GestureWindow(tuple(self._capture))
            reading = detect_posture(head, self.config.posture_thresholds)
            if reading.posture in ("RX+", "RX-", "RY+", "RY-"):
                self._capture_done = True
                self._act_on_recognition(reading.posture, 1.0, head)
                return
            if self.config.method in (2, 3):
                window = head
        if self.config.method == 1 and len(self._capture) >= 2:
            comp = gravity_compensate(GestureWindow(tuple(self._capture)))
            axis = dominant_axis(comp)
            cross = find_zero_crossing(comp[:, axis])
            if cross is not None:
                window = GestureWindow(tuple(self._capture[:cross + 1]))
        if window is None:
            return
        self._capture_done = True
        t0 = time.perf_counter()
        label, conf = self._classify(window)
        self._act_on_recognition(label, conf, window)
        self.last_latency_ms = (time.perf_counter() - t0) * 1000.0

    def _classify(self, window):
        if self.config.method == 3:
            if self.mlp_model is None:
                self._notice("no ANN model loaded")
                return UNRECOGNIZED, 0.0
            rec = classify_ann(self.mlp_model, window,
                               self.config.accept_threshold)
            return rec.label, rec.confidence
        if self.stat_model is None:
            self._notice("no statistical model loaded")
            return UNRECOGNIZED, 0.0
        return classify_stat(self.stat_model, window)

    def _act_on_recognition(self, label, confidence, window):
        self.last_recognition = (label, confidence)
        self.emit("Effect", {"effect": "recognition", "label": label,
                             "confidence": round(confidence, 6),
                             "t_ms": self.clock})
        if label == UNRECOGNIZED and self.config.mode == 1:
            return
        if self.guard.phase == force_mod.STOPPED:
            self._notice("guard stopped; motion inhibited")
            return
        if not self.sim.motors_on:
            self._notice("motors off; motion inhibited")
            return

        ws = self.profile.workspace
        try:
            if is_rotation(label):
                inc = rotation_increment(ws, self.sim.pose, label)
            elif self.config.mode == 1:
                u = class_to_direction(label)
                inc = translation_increment(ws, self.sim.pose.position(), u)
            else:
                head = GestureWindow(tuple(window.samples[:4]))
                u = normalize_direction(head.comp_means(), self.config.deadband)
                if u is None:
                    return
                inc = translation_increment(ws, self.sim.pose.position(), u)
            self.sim.start_move(inc)
        except MotorsOff:
            self._notice("motors off; motion inhibited")

    # --- command channel ---------------------------------------------------

    def handle_command(self, verb, confidence, t_ms=None):
        if t_ms is not None:
            self.advance(t_ms)
            self.last_heartbeat = t_ms
        if confidence < self.config.command_confidence_min:
            self.emit("Effect", {"effect": "rejected", "verb": verb,
                                 "confidence": round(confidence, 6),
                                 "t_ms": self.clock})
            return

        if verb == "ROBOT MOTORS ON":
            self.sim.motors_on = True
        elif verb == "ROBOT MOTORS OFF":
            self.sim.stop_move()
            self.sim.motors_on = False
        elif verb == "COMPUTER MOVE LINE":
            wp = Waypoint(index=len(self.waypoints),
                          pose=self.sim.pose.copy(),
                          speed=self.sim.lin_speed)
            self.waypoints.append(wp)
            self.emit("Effect", {"effect": "waypoint", "index": wp.index,
                                 "t_ms": self.clock})
        elif verb.startswith("COMPUTER SET SPEED"):
            try:
                v = float(verb.split()[-1])
            except ValueError:
                raise UnknownVerb(verb)
            self.sim.lin_speed = v
        elif verb.startswith("COMPUTER MODE"):
            m = verb.split()[-1]
            if m not in ("1", "2"):
                raise UnknownVerb(verb)
            self.config.mode = int(m)
        elif verb == "COMPUTER GUARD RESET":
            try:
                self.guard.reset()
            except NotStopped:
                self._notice("guard not stopped")
        elif verb == "COMPUTER GENERATE":
            try:
                program = self.generate_program()
            except EmptyProgram:
                self._notice("no waypoints to generate")
                return
            self.emit("Effect", {"effect": "program",
                                 "text": program_text(program),
                                 "t_ms": self.clock})
        elif verb == "COMPUTER RUN":
            try:
                program = self.generate_program()
                self.replay_program(program)
            except EmptyProgram:
                self._notice("no waypoints to run")
            except GuardStopped:
                self._notice("guard stopped during run")
            except MotorsOff:
                self._notice("motors off; run inhibited")
        else:
            raise UnknownVerb(verb)

    # --- program -------------------------------------------------------------

    def generate_program(self):
        if not self.waypoints:
            raise EmptyProgram("no waypoints captured")
        statements = tuple(ProgramStatement(pose=w.pose.copy(), v=w.speed)
                           for w in self.waypoints)
        return RobotProgram(name=self.config.program_name,
                            profile=self.profile.name,
                            statements=statements)

    def replay_program(self, program):
        """Execute the program statement by statement on the sim, ticking to
        completion. Aborts with GuardStopped if the guard trips."""
        if not self.sim.motors_on:
            raise MotorsOff("replay with motors off")
        self._replaying = True
        try:
            for stmt in program.statements:
                inc = stmt.pose.as_array() - self.sim.pose.as_array()
                self.sim.start_move(inc, lin_speed=stmt.v)
                while self.sim.moving:
                    self._tick()
                    if self.guard.phase == force_mod.STOPPED:
                        raise GuardStopped("guard tripped during replay")
        finally:
            self._replaying = False
        return self.sim.pose.copy()
