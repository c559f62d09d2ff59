// Console state: a pure reducer over received messages. The console renders
// only what telemetry says — it never simulates robot state locally, so
// reloading the page can never disagree with the robot.

import { Effect, Message, Telemetry, isEffect, isTelemetry } from "./protocol.js";

export type Connection = "connecting" | "open" | "closed";

export interface ConsoleState {
  connection: Connection;
  telemetry: Telemetry | null;   // latest-wins buffer: only the newest frame
  vibrating: boolean;            // tactile-feedback analogue (pulsing UI)
  guardStopped: boolean;
  waypoints: number;
  lastRecognition: [string, number] | null;
  lastRejected: string | null;
  notices: string[];
  program: string | null;        // last generated program text
  errors: string[];
}

export function initialState(): ConsoleState {
  return {
    connection: "connecting",
    telemetry: null,
    vibrating: false,
    guardStopped: false,
    waypoints: 0,
    lastRecognition: null,
    lastRejected: null,
    notices: [],
    program: null,
    errors: [],
  };
}

const NOTICE_LIMIT = 8;

function pushBounded(list: string[], item: string): string[] {
  const out = [...list, item];
  return out.length > NOTICE_LIMIT ? out.slice(out.length - NOTICE_LIMIT) : out;
}

function applyEffect(state: ConsoleState, e: Effect): ConsoleState {
  switch (e.effect) {
    case "vibrate_on":
      return { ...state, vibrating: true };
    case "vibrate_off":
      return { ...state, vibrating: false };
    case "stop":
      return {
        ...state,
        guardStopped: e.reason === "guard" ? true : state.guardStopped,
        notices: pushBounded(state.notices, `stopped (${e.reason ?? "?"})`),
      };
    case "recognition":
      return { ...state, lastRecognition: [String(e.label), Number(e.confidence)] };
    case "rejected":
      return { ...state, lastRejected: String(e.verb) };
    case "waypoint":
      return state; // count is mirrored from telemetry, not from effects
    case "program":
      return { ...state, program: e.text ?? null };
    case "notice":
      return { ...state, notices: pushBounded(state.notices, e.text ?? "") };
    default:
      return state;
  }
}

export function reduce(state: ConsoleState, msg: Message): ConsoleState {
  if (isTelemetry(msg)) {
    return {
      ...state,
      telemetry: msg,
      waypoints: msg.waypoints,
      guardStopped: msg.guard === "Stopped",
    };
  }
  if (isEffect(msg)) {
    return applyEffect(state, msg);
  }
  if (msg.kind === "Error") {
    return { ...state, errors: pushBounded(state.errors, String(msg.message)) };
  }
  return state;
}

export function setConnection(state: ConsoleState, connection: Connection): ConsoleState {
  return { ...state, connection };
}
