// DOM wiring for the teach console. Layout lives in index.html; this file
// connects buttons and pads to the gateway client and renders state.

import { GatewayClient } from "./client.js";
import { drawPose } from "./plot.js";
import { Message } from "./protocol.js";
import { ConsoleState, initialState, reduce, setConnection } from "./state.js";
import { ClassLabel, ROTATIONS, TRANSLATIONS } from "./synth.js";

let state: ConsoleState = initialState();

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

const client = new GatewayClient({
  onMessage(msg: Message) {
    state = reduce(state, msg);
    render();
  },
  onConnection(open: boolean) {
    state = setConnection(state, open ? "open" : "closed");
    render();
  },
});

function render(): void {
  $("conn").textContent = state.connection;
  $("conn").className = state.connection;
  const t = state.telemetry;
  $("motion").textContent = t ? t.motion : "—";
  $("guard").textContent = t ? t.guard : "—";
  $("motors").textContent = t ? (t.motors ? "on" : "off") : "—";
  $("waypoints").textContent = String(state.waypoints);
  $("recognition").textContent = state.lastRecognition
    ? `${state.lastRecognition[0]} (${state.lastRecognition[1].toFixed(2)})`
    : "—";
  $("rejected").textContent = state.lastRejected ?? "";
  $("vibrate").classList.toggle("pulsing", state.vibrating);
  $("guard-modal").classList.toggle("hidden", !state.guardStopped);
  $("notices").textContent = state.notices.join("\n");

  const canvas = $("plot") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d");
  if (ctx) drawPose(ctx, canvas.width, canvas.height, t ? t.pose : null);

  const dl = $("download") as HTMLAnchorElement;
  dl.classList.toggle("hidden", state.program === null);
}

function wireClassPad(): void {
  const pad = $("class-pad");
  for (const label of [...TRANSLATIONS, ...ROTATIONS]) {
    const btn = document.createElement("button");
    btn.textContent = label;
    btn.addEventListener("pointerdown", () => {
      client.setPad({ kind: "class", label: label as ClassLabel, n: 0 });
    });
    pad.appendChild(btn);
  }
}

function wireBButton(): void {
  const b = $("b-button");
  const down = () => {
    client.pressB();
    b.classList.add("held");
  };
  const up = () => {
    client.releaseB();
    b.classList.remove("held");
  };
  b.addEventListener("pointerdown", down);
  b.addEventListener("pointerup", up);
  b.addEventListener("pointerleave", up);
}

function wireStrokePad(): void {
  const pad = $("stroke-pad");
  let last: { x: number; y: number; t: number } | null = null;
  pad.addEventListener("pointermove", (ev: Event) => {
    const e = ev as PointerEvent;
    const now = performance.now();
    if (last) {
      const dt = Math.max(1, now - last.t) / 1000;
      const rect = (pad as HTMLElement).getBoundingClientRect();
      const vx = (e.clientX - last.x) / rect.width / dt;
      const vy = (e.clientY - last.y) / rect.height / dt;
      client.setPad({ kind: "stroke", vx, vy });
    }
    last = { x: e.clientX, y: e.clientY, t: now };
  });
  pad.addEventListener("pointerleave", () => {
    last = null;
    client.setPad({ kind: "idle" });
  });
}

function confidence(): number {
  // demo slider: degrade command confidence below the 0.70 gate to show
  // the Rejected path
  const slider = $("confidence") as HTMLInputElement;
  return Number(slider.value);
}

function wireCommands(): void {
  const verbs: Array<[string, string]> = [
    ["cmd-motors-on", "ROBOT MOTORS ON"],
    ["cmd-motors-off", "ROBOT MOTORS OFF"],
    ["cmd-save", "COMPUTER MOVE LINE"],
    ["cmd-mode1", "COMPUTER MODE 1"],
    ["cmd-mode2", "COMPUTER MODE 2"],
    ["cmd-guard-reset", "COMPUTER GUARD RESET"],
    ["cmd-generate", "COMPUTER GENERATE"],
    ["cmd-run", "COMPUTER RUN"],
  ];
  for (const [id, verb] of verbs) {
    $(id).addEventListener("click", () => client.sendCommand(verb, confidence()));
  }
  $("download").addEventListener("click", () => {
    if (state.program === null) return;
    const blob = new Blob([state.program], { type: "text/plain" });
    const a = $("download") as HTMLAnchorElement;
    a.href = URL.createObjectURL(blob);
    a.download = "program.prog";
  });
}

function main(): void {
  wireBButton();
  wireClassPad();
  wireStrokePad();
  wireCommands();
  const params = new URLSearchParams(window.location.search);
  const url = params.get("ws") ?? "ws://127.0.0.1:8765";
  client.connect(url);
  render();
}

main();
