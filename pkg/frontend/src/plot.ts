// 2D pose plot: XY top view (workspace disc) plus a Z strip. Pure drawing
// from the latest telemetry; no client-side motion prediction.

export interface PlotConfig {
  rExt: number; // workspace radius, mm
  zMin: number;
  zMax: number;
}

export const DEFAULT_PLOT: PlotConfig = { rExt: 2012, zMin: -2012, zMax: 2012 };

export function drawPose(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  pose: number[] | null,
  cfg: PlotConfig = DEFAULT_PLOT,
): void {
  ctx.clearRect(0, 0, width, height);
  const stripW = 36;
  const size = Math.min(width - stripW - 8, height);
  const cx = size / 2;
  const cy = height / 2;
  const scale = (size / 2 - 6) / cfg.rExt;

  // workspace boundary
  ctx.strokeStyle = "#889";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.arc(cx, cy, cfg.rExt * scale, 0, 2 * Math.PI);
  ctx.stroke();
  // axes
  ctx.strokeStyle = "#dde";
  ctx.beginPath();
  ctx.moveTo(cx - cfg.rExt * scale, cy);
  ctx.lineTo(cx + cfg.rExt * scale, cy);
  ctx.moveTo(cx, cy - cfg.rExt * scale);
  ctx.lineTo(cx, cy + cfg.rExt * scale);
  ctx.stroke();

  // z strip frame
  const zx = width - stripW;
  ctx.strokeStyle = "#889";
  ctx.strokeRect(zx, 4, stripW - 4, height - 8);

  if (!pose) return;
  const [x, y, z] = pose;

  // tool position, screen-y up
  ctx.fillStyle = "#c33";
  ctx.beginPath();
  ctx.arc(cx + x * scale, cy - y * scale, 5, 0, 2 * Math.PI);
  ctx.fill();

  // z marker
  const frac = (z - cfg.zMin) / (cfg.zMax - cfg.zMin);
  const zy = 4 + (1 - Math.min(1, Math.max(0, frac))) * (height - 8);
  ctx.fillStyle = "#36c";
  ctx.fillRect(zx, zy - 2, stripW - 4, 4);
}
