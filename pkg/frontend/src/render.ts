/**
 * Compose figures from harness tables.
 *
 * "deviation-panels" draws two stacked panels (real and imaginary parts)
 * of the normalized actual deviations as dots with the prediction as a
 * line. "scatter" overlays one eigenvalue cloud per input with the image
 * curve. Rendering is a pure function of the CSV contents.
 */

import { writeFileSync } from "node:fs";
import { CompareTable, SchemaError, Table, readTable } from "./csv";
import { encodePng } from "./png";
import {
  BLACK,
  BLUE,
  Color,
  GRAY,
  PALETTE,
  RED,
  Raster,
} from "./raster";
import { DeviationPanelsSeries, deviationPanels, scatterSeries } from "./series";

export type Figure = "scatter" | "deviation-panels";

export interface PlotJob {
  inputs: string[];
  figure: Figure;
  output: string;
  title?: string;
}

interface Scale {
  lo: number;
  hi: number;
  pixLo: number;
  pixHi: number;
}

function makeScale(values: number[], pixLo: number, pixHi: number): Scale {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (!isFinite(lo) || !isFinite(hi)) {
    lo = -1;
    hi = 1;
  }
  if (hi - lo < 1e-300) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.05 * (hi - lo);
  return { lo: lo - pad, hi: hi + pad, pixLo, pixHi };
}

function toPix(s: Scale, v: number): number {
  return s.pixLo + ((v - s.lo) / (s.hi - s.lo)) * (s.pixHi - s.pixLo);
}

function formatTick(v: number): string {
  if (v === 0) return "0";
  const s = v.toPrecision(3);
  return Number(s).toString().replace("e+", "e");
}

function drawFrame(
  r: Raster,
  xs: Scale,
  ys: Scale,
  xLabel: string,
  yLabel: string,
): void {
  r.rect(xs.pixLo, ys.pixHi, xs.pixHi, ys.pixLo, BLACK);
  const ticks = 5;
  for (let i = 0; i < ticks; i++) {
    const xv = xs.lo + ((i + 0.5) / ticks) * (xs.hi - xs.lo);
    const xp = toPix(xs, xv);
    r.line(xp, ys.pixLo, xp, ys.pixLo + 4, BLACK);
    const label = formatTick(xv);
    r.text(xp - r.textWidth(label) / 2, ys.pixLo + 7, label, BLACK);
    const yv = ys.lo + ((i + 0.5) / ticks) * (ys.hi - ys.lo);
    const yp = toPix(ys, yv);
    r.line(xs.pixLo - 4, yp, xs.pixLo, yp, BLACK);
    const ylab = formatTick(yv);
    r.text(xs.pixLo - 6 - r.textWidth(ylab), yp - 3, ylab, BLACK);
  }
  r.text(
    (xs.pixLo + xs.pixHi) / 2 - r.textWidth(xLabel) / 2,
    ys.pixLo + 18,
    xLabel,
    BLACK,
  );
  r.text(xs.pixLo + 4, ys.pixHi + 4, yLabel, BLACK);
}

function drawPanel(
  r: Raster,
  theta: number[],
  dots: number[],
  line: number[],
  pixTop: number,
  pixBottom: number,
  width: number,
  yLabel: string,
): void {
  const marginL = 78;
  const marginR = 18;
  const xs = makeScale(
    theta.length ? [Math.min(...theta), Math.max(...theta)] : [-Math.PI, Math.PI],
    marginL,
    width - marginR,
  );
  const ys = makeScale(dots.concat(line), pixBottom, pixTop);
  drawFrame(r, xs, ys, "theta", yLabel);
  for (let i = 0; i + 1 < theta.length; i++) {
    r.line(
      toPix(xs, theta[i]),
      toPix(ys, line[i]),
      toPix(xs, theta[i + 1]),
      toPix(ys, line[i + 1]),
      RED,
    );
  }
  for (let i = 0; i < theta.length; i++) {
    r.disc(toPix(xs, theta[i]), toPix(ys, dots[i]), 2, BLUE);
  }
}

export function renderDeviationPanels(
  series: DeviationPanelsSeries,
  width = 900,
  height = 640,
): Raster {
  const r = new Raster(width, height);
  const gap = 46;
  const top = 16;
  const panelH = (height - 2 * gap - top) / 2;
  drawPanel(
    r,
    series.theta,
    series.actualRe,
    series.predRe,
    top,
    top + panelH,
    width,
    "Re",
  );
  drawPanel(
    r,
    series.theta,
    series.actualIm,
    series.predIm,
    top + panelH + gap,
    top + 2 * panelH + gap,
    width,
    "Im",
  );
  return r;
}

export function renderScatter(tables: Table[], width = 720, height = 720): Raster {
  const r = new Raster(width, height);
  const series = scatterSeries(tables);
  const allX = series.dots.flat().map((p) => p.x).concat(series.curve.map((p) => p.x));
  const allY = series.dots.flat().map((p) => p.y).concat(series.curve.map((p) => p.y));
  // shared units per pixel so the complex plane keeps its aspect ratio
  const marginL = 78;
  const marginR = 20;
  const marginB = 46;
  const marginT = 16;
  let xs = makeScale(allX.length ? allX : [-1, 1], marginL, width - marginR);
  let ys = makeScale(allY.length ? allY : [-1, 1], height - marginB, marginT);
  const xSpan = (xs.hi - xs.lo) / Math.abs(xs.pixHi - xs.pixLo);
  const ySpan = (ys.hi - ys.lo) / Math.abs(ys.pixHi - ys.pixLo);
  const unit = Math.max(xSpan, ySpan);
  const grow = (s: Scale, target: number) => {
    const mid = (s.lo + s.hi) / 2;
    const half = (Math.abs(s.pixHi - s.pixLo) * target) / 2;
    return { ...s, lo: mid - half, hi: mid + half };
  };
  xs = grow(xs, unit);
  ys = grow(ys, unit);
  drawFrame(r, xs, ys, "Re", "Im");
  for (let i = 0; i + 1 < series.curve.length; i++) {
    r.line(
      toPix(xs, series.curve[i].x),
      toPix(ys, series.curve[i].y),
      toPix(xs, series.curve[i + 1].x),
      toPix(ys, series.curve[i + 1].y),
      GRAY,
    );
  }
  series.dots.forEach((cloud, k) => {
    const color: Color = PALETTE[k % PALETTE.length];
    for (const p of cloud) {
      r.disc(toPix(xs, p.x), toPix(ys, p.y), 2.2, color);
    }
  });
  return r;
}

export interface RenderResult {
  written: string;
  nRows: number;
}

export function render(job: PlotJob): RenderResult {
  const tables = job.inputs.map(readTable);
  let raster: Raster;
  if (job.figure === "deviation-panels") {
    const table = tables[0];
    if (table.kind !== "compare") {
      throw new SchemaError("missing column: image_re", "image_re");
    }
    raster = renderDeviationPanels(deviationPanels(table as CompareTable));
  } else {
    raster = renderScatter(tables);
  }
  writeFileSync(job.output, encodePng(raster.width, raster.height, raster.data));
  return {
    written: job.output,
    nRows: tables.reduce((acc, t) => acc + t.rows.length, 0),
  };
}
