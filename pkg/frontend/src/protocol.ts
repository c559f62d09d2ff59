// Wire protocol shared with the session gateway: one JSON object per
// WebSocket text frame, {seq, kind, ...payload}.

export const KINDS = [
  "Hello", "InputSample", "ButtonEdge", "Command",
  "Telemetry", "Effect", "Heartbeat", "Error",
] as const;

export type Kind = (typeof KINDS)[number];

export interface Message {
  seq: number;
  kind: Kind;
  [field: string]: unknown;
}

export interface Telemetry extends Message {
  kind: "Telemetry";
  t_ms: number;
  pose: number[];           // [x, y, z, rx, ry, rz] mm / deg
  motion: "Idle" | "Moving";
  guard: "Normal" | "Alert" | "Stopped";
  motors: boolean;
  recognition: [string, number];
  waypoints: number;
}

export interface Effect extends Message {
  kind: "Effect";
  t_ms: number;
  effect: string;
  text?: string;            // program / notice payloads
  label?: string;
  confidence?: number;
  reason?: string;
  verb?: string;
  index?: number;
}

export function encode(seq: number, kind: Kind, payload: Record<string, unknown>): string {
  return JSON.stringify({ seq, kind, ...payload });
}

export function decode(line: string): Message {
  let raw: unknown;
  try {
    raw = JSON.parse(line);
  } catch (e) {
    throw new Error(`bad JSON frame: ${e}`);
  }
  if (typeof raw !== "object" || raw === null) {
    throw new Error("frame is not an object");
  }
  const msg = raw as Record<string, unknown>;
  if (!KINDS.includes(msg.kind as Kind)) {
    throw new Error(`unknown kind ${String(msg.kind)}`);
  }
  return msg as unknown as Message;
}

export function isTelemetry(m: Message): m is Telemetry {
  return m.kind === "Telemetry";
}

export function isEffect(m: Message): m is Effect {
  return m.kind === "Effect";
}

// Outbound message builders. The server re-stamps t_ms with its own clock
// in live mode; we still send our local session time for log readability.

export function helloOperator(seq: number): string {
  return encode(seq, "Hello", { role: "operator" });
}

export function inputSample(
  seq: number, t_ms: number,
  ax: number, ay: number, az: number, pressed: boolean,
): string {
  return encode(seq, "InputSample", { t_ms, ax, ay, az, b: pressed ? 1 : 0 });
}

export function command(seq: number, t_ms: number, verb: string, confidence: number): string {
  return encode(seq, "Command", { t_ms, verb, confidence });
}

export function heartbeat(seq: number, t_ms: number): string {
  return encode(seq, "Heartbeat", { t_ms });
}
