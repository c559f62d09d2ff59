"""Wire protocol between the session core and external clients.

Messages are line-delimited JSON objects, one per line, with fields:

  seq   strictly increasing integer per connection per direction
  kind  one of Hello, InputSample, ButtonEdge, Command, Telemetry,
        Effect, Heartbeat, Error
  plus per-kind payload fields:

  Hello        role ("operator" | "observer")
  InputSample  t_ms, ax, ay, az, b (0/1)
  ButtonEdge   t_ms, pressed (bool)
  Command      t_ms, verb, confidence
  Heartbeat    t_ms
  Telemetry    t_ms, pose, motion, guard, motors, recognition, waypoints
  Effect       t_ms, effect, extra fields per effect
  Error        message

The same schema rides two transports: session log files (offline replay,
deterministic virtual time) and WebSocket text frames (live serving).
"""

import asyncio
import json

from .errors import ParseError
from .signals import AccelSample, clamp_g

KINDS = ("Hello", "InputSample", "ButtonEdge", "Command", "Telemetry",
         "Effect", "Heartbeat", "Error")

INBOUND_KINDS = ("Hello", "InputSample", "ButtonEdge", "Command", "Heartbeat")

DEFAULT_TIMEOUT_MS = 200


def encode_message(seq, kind, payload):
    if kind not in KINDS:
        raise ValueError("unknown kind %r" % kind)
    msg = {"seq": seq, "kind": kind}
    msg.update(payload)
    return json.dumps(msg, separators=(",", ":"))


def decode_message(line, offset=None):
    try:
        msg = json.loads(line)
    except json.JSONDecodeError as e:
        raise ParseError("bad JSON: %s" % e, line=offset) from e
    if not isinstance(msg, dict) or "kind" not in msg:
        raise ParseError("missing kind", line=offset)
    if msg["kind"] not in KINDS:
        raise ParseError("unknown kind %r" % msg["kind"], line=offset)
    return msg


def dispatch_inbound(session, msg):
    """Feed one inbound message into the session event stream."""
    kind = msg["kind"]
    if kind == "InputSample":
        session.handle_sample(AccelSample(
            t_ms=int(msg["t_ms"]),
            ax=clamp_g(float(msg["ax"])),
            ay=clamp_g(float(msg["ay"])),
            az=clamp_g(float(msg["az"])),
            b_pressed=bool(int(msg["b"])),
        ))
    elif kind == "ButtonEdge":
        session.handle_button_edge(int(msg["t_ms"]), bool(msg["pressed"]))
    elif kind == "Command":
        session.handle_command(msg["verb"], float(msg["confidence"]),
                               t_ms=int(msg.get("t_ms", session.clock)))
    elif kind == "Heartbeat":
        session.heartbeat(int(msg["t_ms"]))
    elif kind == "Hello":
        pass
    else:
        raise ParseError("kind %r is not inbound" % kind)


def record_message(log_file, msg_line):
    log_file.write(msg_line.rstrip("\n") + "\n")
    log_file.flush()


def replay_session(log_lines, session):
    """Feed a recorded inbound log into a fresh session under virtual time.

    Returns the outbound transcript (Telemetry and Effect lines, sequence
    numbered). Deterministic: a log replayed twice yields byte-identical
    transcripts.
    """
    last_seq = None
    for offset, line in enumerate(log_lines, start=1):
        line = line.strip()
        if not line:
            continue
        msg = decode_message(line, offset=offset)
        seq = msg.get("seq")
        if seq is not None and last_seq is not None and seq <= last_seq:
            raise ParseError("seq not increasing", line=offset)
        if seq is not None:
            last_seq = seq
        dispatch_inbound(session, msg)
    transcript = []
    for i, (kind, payload) in enumerate(session.outbox, start=1):
        transcript.append(encode_message(i, kind, payload))
    return transcript


def replay_log_file(path, session):
    with open(path) as f:
        return replay_session(f.readlines(), session)


# --- live serving over WebSocket ------------------------------------------------


class GatewayServer:
    """One operator connection plus any number of read-only observers.

    All inbound messages funnel through a single queue into the session;
    outbound Telemetry/Effect messages are broadcast. Slow observers are
    disconnected rather than buffered unboundedly.
    """

    OBSERVER_QUEUE_MAX = 512

    def __init__(self, session, tick_ms=10, record_path=None):
        self.session = session
        self.tick_ms = tick_ms
        self.record_path = record_path
        self._record_file = None
        self._operator = None
        self._observers = set()
        self._ingress = asyncio.Queue()
        self._out_seq = 0
        self._started = asyncio.Event()
        self._t0 = None

    def _now_ms(self):
        import time

        if self._t0 is None:
            self._t0 = time.monotonic()
        return int((time.monotonic() - self._t0) * 1000)

    async def _broadcast_outbox(self):
        while self.session.outbox:
            kind, payload = self.session.outbox.pop(0)
            self._out_seq += 1
            line = encode_message(self._out_seq, kind, payload)
            targets = list(self._observers)
            if self._operator is not None:
                targets.append(self._operator)
            for ws in targets:
                try:
                    await ws.send(line)
                except Exception:
                    self._drop(ws)

    def _drop(self, ws):
        self._observers.discard(ws)
        if self._operator is ws:
            self._operator = None

    async def _session_loop(self):
        while True:
            await asyncio.sleep(self.tick_ms / 1000.0)
            now = self._now_ms()
            while not self._ingress.empty():
                msg = self._ingress.get_nowait()
                # live mode: server clock owns time
                if "t_ms" in msg:
                    msg = dict(msg, t_ms=now)
                try:
                    dispatch_inbound(self.session, msg)
                except Exception as e:
                    self.session.emit("Error", {"message": str(e)})
            self.session.advance(now)
            await self._broadcast_outbox()

    async def _handler(self, ws):
        role = "observer"
        try:
            async for raw in ws:
                try:
                    msg = decode_message(raw)
                except ParseError as e:
                    await ws.send(encode_message(0, "Error", {"message": str(e)}))
                    continue
                if msg["kind"] == "Hello":
                    role = msg.get("role", "observer")
                    if role == "operator":
                        if self._operator is None:
                            self._operator = ws
                        else:
                            await ws.send(encode_message(
                                0, "Error", {"message": "operator slot taken"}))
                            role = "observer"
                    if role == "observer":
                        self._observers.add(ws)
                    continue
                if msg["kind"] not in INBOUND_KINDS:
                    await ws.send(encode_message(
                        0, "Error", {"message": "kind %r is not inbound" % msg["kind"]}))
                    continue
                if ws is not self._operator:
                    await ws.send(encode_message(
                        0, "Error", {"message": "only the operator may send input"}))
                    continue
                if self._record_file is not None:
                    record_message(self._record_file, raw)
                await self._ingress.put(msg)
        finally:
            self._drop(ws)

    async def serve(self, host, port):
        import websockets

        from .errors import BindFailure

        if self.record_path:
            self._record_file = open(self.record_path, "w")
        try:
            server = await websockets.serve(self._handler, host, port)
        except OSError as e:
            raise BindFailure("cannot bind %s:%d: %s" % (host, port, e)) from e
        loop_task = asyncio.create_task(self._session_loop())
        self._started.set()
        try:
            await server.wait_closed()
        finally:
            loop_task.cancel()
            if self._record_file is not None:
                self._record_file.close()


def serve_forever(session, host, port, tick_ms=10, record_path=None):
    server = GatewayServer(session, tick_ms=tick_ms, record_path=record_path)
    asyncio.run(server.serve(host, port))
