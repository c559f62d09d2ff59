import numpy as np
import pytest

from gesturebot import force as force_mod
from gesturebot import harness
from gesturebot.errors import ParseError, UnknownVerb
from gesturebot.geometry import Pose
from gesturebot.session import (
    SessionConfig,
    TeachSession,
    parse_program,
    program_text,
)
from gesturebot.signals import AccelSample, UNRECOGNIZED, generate_synthetic
from gesturebot.statmodel import train_stat


def stat_session(mode=1, initial=(1000.0, 0.0, 0.0, 0.0, 0.0, 0.0),
                 lin_speed=10000.0, **kw):
    """Method-2 session with a statistical model trained on noiseless
    prototypes; fast linear speed by default so replays finish in a few
    ticks (pass a slow speed to inspect in-flight targets)."""
    model = train_stat(harness.make_synthetic_corpus(1, 0.0, 0, 2), 2)
    config = SessionConfig(method=2, mode=mode, initial_pose=initial,
                           lin_speed=lin_speed, **kw)
    return TeachSession(config, stat_model=model)


def feed_gesture(session, label, t0=None, release=True):
    """Stream one synthetic gesture's samples into the session; returns the
    time of the last sample fed."""
    if t0 is None:
        t0 = session.clock + 10
    trace = generate_synthetic(label, 0.0, seed=0)
    t = t0
    for s in trace.samples:
        t = t0 + s.t_ms
        session.handle_sample(AccelSample(t, s.ax, s.ay, s.az, s.b_pressed))
    if release:
        t += 10
        session.handle_sample(AccelSample(t, 0.0, 0.0, 1.0, False))
    return t


def effects(session, name):
    return [p for k, p in session.outbox
            if k == "Effect" and p.get("effect") == name]


class TestGestureToMotion:
    def test_x_plus_moves_to_boundary(self):
        s = stat_session(lin_speed=75.0)
        s.handle_command("ROBOT MOTORS ON", 1.0)
        feed_gesture(s, "X+", release=False)
        assert s.last_recognition[0] == "X+"
        # from (1000, 0, 0) the +x boundary of the 2012 mm sphere
        assert s.sim.target.x == pytest.approx(2012.0, abs=1e-9)

    def test_release_stops_motion(self):
        s = stat_session(lin_speed=75.0)
        s.handle_command("ROBOT MOTORS ON", 1.0)
        t = feed_gesture(s, "X+", release=True)
        assert not s.sim.moving
        assert s.sim.pose.x < 2012.0 - 1.0

    def test_one_gesture_per_hold(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        feed_gesture(s, "X+", release=False)
        assert len(effects(s, "recognition")) == 1

    def test_motors_off_inhibits_motion(self):
        s = stat_session()
        feed_gesture(s, "Y+")
        assert s.last_recognition[0] == "Y+"
        assert not s.sim.moving
        assert any("motors off" in p.get("text", "")
                   for p in effects(s, "notice"))

    def test_guard_stop_inhibits_motion(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        s.guard.update(force_mod.ForceReading(fz=50.0))
        assert s.guard.phase == force_mod.STOPPED
        feed_gesture(s, "X+", release=False)
        assert not s.sim.moving
        assert any("guard" in p.get("text", "") for p in effects(s, "notice"))

    def test_mode2_free_direction(self):
        s = stat_session(mode=2, lin_speed=75.0)
        s.handle_command("ROBOT MOTORS ON", 1.0)
        feed_gesture(s, "X+", release=False)
        # pure +x signature normalizes to the +x direction
        assert s.sim.target.x == pytest.approx(2012.0, abs=1e-6)
        assert s.sim.target.y == pytest.approx(0.0, abs=1e-9)

    def test_latency_is_recorded(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        feed_gesture(s, "X+", release=False)
        assert s.last_latency_ms is not None
        assert s.last_latency_ms > 0.0


class TestPostures:
    def test_static_rx_plus_rotates(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        t = s.clock + 10
        for i in range(6):
            s.handle_sample(AccelSample(t + i * 10, 0.0, -1.0, 0.0, True))
        assert s.last_recognition == ("RX+", 1.0)
        assert s.sim.target.rx == pytest.approx(180.0)

    def test_static_gate_beats_the_recognizer(self):
        # postures are decided from gravity before any model runs
        s = TeachSession(SessionConfig(method=2, lin_speed=10000.0))
        s.handle_command("ROBOT MOTORS ON", 1.0)
        for i in range(6):
            s.handle_sample(AccelSample(10 + i * 10, 1.0, 0.0, 0.0, True))
        assert s.last_recognition[0] == "RY-"


class TestCommands:
    def test_low_confidence_rejected(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 0.5)
        assert not s.sim.motors_on
        rej = effects(s, "rejected")
        assert len(rej) == 1 and rej[0]["verb"] == "ROBOT MOTORS ON"

    def test_threshold_is_inclusive(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 0.70)
        assert s.sim.motors_on

    def test_motors_off_stops(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        feed_gesture(s, "X+", release=False)
        s.handle_command("ROBOT MOTORS OFF", 1.0)
        assert not s.sim.moving and not s.sim.motors_on

    def test_set_speed_and_mode(self):
        s = stat_session()
        s.handle_command("COMPUTER SET SPEED 42.5", 1.0)
        assert s.sim.lin_speed == 42.5
        s.handle_command("COMPUTER MODE 2", 1.0)
        assert s.config.mode == 2

    def test_bad_verbs(self):
        s = stat_session()
        with pytest.raises(UnknownVerb):
            s.handle_command("COMPUTER MODE 7", 1.0)
        with pytest.raises(UnknownVerb):
            s.handle_command("COMPUTER SELF DESTRUCT", 1.0)

    def test_guard_reset(self):
        s = stat_session()
        s.handle_command("COMPUTER GUARD RESET", 1.0)   # not stopped: notice
        assert any("guard" in p.get("text", "") for p in effects(s, "notice"))
        s.guard.update(force_mod.ForceReading(fz=50.0))
        s.handle_command("COMPUTER GUARD RESET", 1.0)
        assert s.guard.phase == force_mod.NORMAL


class TestWatchdog:
    def test_motion_stops_when_heartbeats_halt(self):
        s = stat_session(watchdog_timeout_ms=200)
        s.config.lin_speed = None
        s.sim.lin_speed = 75.0   # slow enough to still be moving
        s.handle_command("ROBOT MOTORS ON", 1.0)
        feed_gesture(s, "X+", release=False)
        assert s.sim.moving
        s.advance(s.clock + 500)   # silence: no further heartbeats
        assert not s.sim.moving
        stops = effects(s, "stop")
        assert any(p.get("reason") == "watchdog" for p in stops)

    def test_heartbeats_keep_motion_alive(self):
        s = stat_session(watchdog_timeout_ms=200)
        s.config.lin_speed = None
        s.sim.lin_speed = 75.0
        s.handle_command("ROBOT MOTORS ON", 1.0)
        t = feed_gesture(s, "X+", release=False)
        for i in range(1, 11):
            s.heartbeat(t + i * 100)
        assert s.sim.moving


class TestProgram:
    def capture_two_waypoints(self, s):
        s.handle_command("ROBOT MOTORS ON", 1.0)
        s.handle_command("COMPUTER MOVE LINE", 1.0)
        s.sim.pose = Pose(1500.0, 100.0, -50.0)
        s.handle_command("COMPUTER MOVE LINE", 1.0)

    def test_generate_round_trip(self):
        s = stat_session()
        self.capture_two_waypoints(s)
        program = s.generate_program()
        text = program_text(program)
        parsed = parse_program(text)
        assert parsed.name == s.config.program_name
        assert parsed.profile == "hp6"
        assert len(parsed.statements) == 2
        assert parsed.statements[1].pose.x == pytest.approx(1500.0)
        assert program_text(parsed) == text

    def test_generate_command_emits_text(self):
        s = stat_session()
        self.capture_two_waypoints(s)
        s.handle_command("COMPUTER GENERATE", 1.0)
        progs = effects(s, "program")
        assert len(progs) == 1
        assert progs[0]["text"].startswith("PROGRAM ")
        assert progs[0]["text"].rstrip().endswith("END")

    def test_generate_without_waypoints(self):
        s = stat_session()
        s.handle_command("COMPUTER GENERATE", 1.0)
        assert effects(s, "program") == []
        assert any("waypoint" in p.get("text", "")
                   for p in effects(s, "notice"))

    def test_run_reaches_last_waypoint(self):
        s = stat_session()
        self.capture_two_waypoints(s)
        s.sim.pose = Pose(0.0, 0.0, 500.0)
        s.handle_command("COMPUTER RUN", 1.0)
        assert np.allclose(s.sim.pose.as_array(),
                           [1500.0, 100.0, -50.0, 0, 0, 0], atol=1e-9)
        assert not s.sim.moving

    def test_run_with_motors_off(self):
        s = stat_session()
        self.capture_two_waypoints(s)
        s.handle_command("ROBOT MOTORS OFF", 1.0)
        s.handle_command("COMPUTER RUN", 1.0)
        assert any("motors off" in p.get("text", "")
                   for p in effects(s, "notice"))

    def test_guard_trip_aborts_run(self):
        # descending through the contact surface trips the guard mid-run
        s = stat_session(contact_z=400.0, contact_stiffness=5.0,
                         initial=(0.0, 0.0, 500.0, 0.0, 0.0, 0.0))
        s.handle_command("ROBOT MOTORS ON", 1.0)
        s.handle_command("COMPUTER MOVE LINE", 1.0)
        s.sim.pose = Pose(0.0, 0.0, 200.0)   # well below the surface
        s.handle_command("COMPUTER MOVE LINE", 1.0)
        s.sim.pose = Pose(0.0, 0.0, 500.0)
        s.handle_command("COMPUTER RUN", 1.0)
        assert s.guard.phase == force_mod.STOPPED
        assert not s.sim.moving
        assert s.sim.pose.z > 200.0   # never reached the second waypoint
        assert any("guard" in p.get("text", "") for p in effects(s, "notice"))

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_program("MOVL X=0\nEND\n")
        with pytest.raises(ParseError):
            parse_program("PROGRAM A PROFILE hp6\nMOVL X=0\n")
        with pytest.raises(ParseError):
            parse_program("PROGRAM A PROFILE hp6\nJUNK\nEND\n")


class TestCaptureEdgeCases:
    def test_abort_notice_on_short_hold(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        s.handle_sample(AccelSample(10, 0.0, 0.0, 1.0, True))
        s.handle_sample(AccelSample(20, 0.0, 0.0, 1.0, False))
        assert any("abort" in p.get("text", "") for p in effects(s, "notice"))

    def test_unrecognized_window_keeps_robot_still(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        t = 10
        for i in range(5):
            # horizontal rest is no class in method-2 windows
            s.handle_sample(AccelSample(t + i * 10, 0.0, 0.0, 1.0, True))
        assert s.last_recognition[0] == UNRECOGNIZED
        assert not s.sim.moving

    def test_button_edge_without_fresh_sample(self):
        s = stat_session()
        s.handle_command("ROBOT MOTORS ON", 1.0)
        s.handle_sample(AccelSample(10, 0.0, -1.0, 0.0, False))
        s.handle_button_edge(20, True)
        for i in range(4):
            s.handle_sample(AccelSample(30 + i * 10, 0.0, -1.0, 0.0, True))
        assert s.last_recognition[0] == "RX+"


def test_telemetry_shape():
    s = stat_session()
    s.heartbeat(50)
    telem = [p for k, p in s.outbox if k == "Telemetry"]
    assert len(telem) == 5   # one per 10 ms tick
    for p in telem:
        assert set(p) == {"t_ms", "pose", "motion", "guard", "motors",
                          "recognition", "waypoints"}
        assert len(p["pose"]) == 6
