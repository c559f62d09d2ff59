// Client-side synthesis of horizontal-convention acceleration samples.
// While the virtual B button is held the pad emits 100 Hz samples: direction
// buttons follow the same full-sine-lobe class profiles the server-side
// corpus generator uses, posture buttons emit static gravity-rotated
// samples, and the free-stroke pad maps stroke velocity onto (ax, ay).

export const SAMPLE_PERIOD_MS = 10; // 100 Hz
export const ACCEL_RANGE_G = 3.0;

export const TRANSLATIONS = ["X+", "X-", "Y+", "Y-", "Z+", "Z-"] as const;
export const ROTATIONS = ["RX+", "RX-", "RY+", "RY-", "RZ+", "RZ-"] as const;
export type ClassLabel = (typeof TRANSLATIONS)[number] | (typeof ROTATIONS)[number];

const AMPLITUDE = 0.6;      // peak dominant-axis acceleration, g
const RZ_AMPLITUDE = 0.4;   // per-axis amplitude of the Z-rotation signature
const CROSSING = 8;         // samples from press to the zero crossing

// Static gravity direction per posture class (horizontal-hold convention).
export const POSTURE_GRAVITY: Record<string, [number, number, number]> = {
  "RY-": [1, 0, 0],
  "RY+": [-1, 0, 0],
  "RX-": [0, 1, 0],
  "RX+": [0, -1, 0],
};

export interface Sample {
  ax: number;
  ay: number;
  az: number;
}

export function clampG(v: number): number {
  return Math.min(ACCEL_RANGE_G, Math.max(-ACCEL_RANGE_G, v));
}

function axisIndex(label: ClassLabel): number {
  return "XYZ".indexOf(label.replace("R", "")[0]);
}

function sign(label: ClassLabel): number {
  return label.endsWith("+") ? 1 : -1;
}

/**
 * Acceleration at sample index n (0 = the press sample) of a class profile.
 * Past the pulse the hand is at rest: gravity on Z only.
 */
export function classSample(label: ClassLabel, n: number): Sample {
  if (label in POSTURE_GRAVITY) {
    const [ax, ay, az] = POSTURE_GRAVITY[label];
    return { ax, ay, az };
  }
  const row: [number, number, number] = [0, 0, 1];
  const pulseLen = 2 * CROSSING + 1;
  if (n >= 0 && n < pulseLen) {
    const v = Math.sin((Math.PI * (n + 1)) / (CROSSING + 1));
    if (label === "RZ+" || label === "RZ-") {
      const s = label === "RZ+" ? 1 : -1;
      row[0] += s * RZ_AMPLITUDE * v;
      row[1] += s * RZ_AMPLITUDE * v;
    } else {
      row[axisIndex(label)] += sign(label) * AMPLITUDE * v;
    }
  }
  return { ax: clampG(row[0]), ay: clampG(row[1]), az: clampG(row[2]) };
}

/** Rest sample (B held but no stroke / between pulses). */
export function restSample(): Sample {
  return { ax: 0, ay: 0, az: 1 };
}

// Free-stroke mode: pointer velocity in pad units/s scaled to g. Screen-y
// grows downward, so a stroke up maps to +y acceleration.
const STROKE_GAIN = 1.5;

export function strokeSample(vx: number, vy: number): Sample {
  return {
    ax: clampG(vx * STROKE_GAIN),
    ay: clampG(-vy * STROKE_GAIN),
    az: 1,
  };
}

/** Velocity below this produces a visually "at rest" stroke sample. The
 * authoritative no-motion deadband lives server-side. */
export const STROKE_DEADBAND = 0.03;

export function strokeIsAtRest(vx: number, vy: number): boolean {
  return Math.hypot(vx * STROKE_GAIN, vy * STROKE_GAIN) < STROKE_DEADBAND;
}
