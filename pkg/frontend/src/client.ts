// Duplex connection to the gateway: one WebSocket, outbound sequence
// numbering, a 100 Hz input/heartbeat pump tied to tab visibility.
// Hiding the tab stops the pump; the server watchdog then halts any motion
// (a demonstration of the safety property, not an accident).

import * as proto from "./protocol.js";
import { ClassLabel, SAMPLE_PERIOD_MS, classSample, restSample, strokeSample } from "./synth.js";

export type PadMode =
  | { kind: "idle" }
  | { kind: "class"; label: ClassLabel; n: number }
  | { kind: "stroke"; vx: number; vy: number };

export interface ClientHooks {
  onMessage(msg: proto.Message): void;
  onConnection(open: boolean): void;
}

export class GatewayClient {
  private ws: WebSocket | null = null;
  private seq = 0;
  private t0 = 0;
  private timer: number | null = null;
  private hooks: ClientHooks;

  bHeld = false;
  pad: PadMode = { kind: "idle" };

  constructor(hooks: ClientHooks) {
    this.hooks = hooks;
  }

  connect(url: string): void {
    this.ws = new WebSocket(url);
    this.ws.onopen = () => {
      this.t0 = performance.now();
      this.send(proto.helloOperator(this.nextSeq()));
      this.startPump();
      this.hooks.onConnection(true);
    };
    this.ws.onclose = () => {
      this.stopPump();
      this.hooks.onConnection(false);
    };
    this.ws.onmessage = (ev) => {
      try {
        this.hooks.onMessage(proto.decode(String(ev.data)));
      } catch {
        // a malformed frame is the server's bug; keep the console alive
      }
    };
  }

  close(): void {
    this.stopPump();
    this.ws?.close();
  }

  private nextSeq(): number {
    this.seq += 1;
    return this.seq;
  }

  private now(): number {
    return Math.round(performance.now() - this.t0);
  }

  private send(line: string): void {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(line);
    }
  }

  sendCommand(verb: string, confidence: number): void {
    this.send(proto.command(this.nextSeq(), this.now(), verb, confidence));
  }

  pressB(): void {
    this.bHeld = true;
    if (this.pad.kind === "class") this.pad.n = 0;
  }

  releaseB(): void {
    this.bHeld = false;
  }

  setPad(pad: PadMode): void {
    this.pad = pad;
  }

  /** One 100 Hz tick: emits an input sample while B is held, otherwise a
   * heartbeat so the watchdog knows the operator is still present. */
  tick(): void {
    const t = this.now();
    if (!this.bHeld) {
      this.send(proto.heartbeat(this.nextSeq(), t));
      return;
    }
    let s;
    if (this.pad.kind === "class") {
      s = classSample(this.pad.label, this.pad.n);
      this.pad.n += 1;
    } else if (this.pad.kind === "stroke") {
      s = strokeSample(this.pad.vx, this.pad.vy);
    } else {
      s = restSample();
    }
    this.send(proto.inputSample(this.nextSeq(), t, s.ax, s.ay, s.az, true));
  }

  private startPump(): void {
    if (this.timer !== null) return;
    this.timer = window.setInterval(() => {
      if (document.hidden) return; // hidden tab: silence, watchdog stops motion
      this.tick();
    }, SAMPLE_PERIOD_MS);
  }

  private stopPump(): void {
    if (this.timer !== null) {
      window.clearInterval(this.timer);
      this.timer = null;
    }
  }
}
