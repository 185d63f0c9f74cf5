/**
 * Plotted data series extracted from harness tables.
 *
 * Deviation panels use the report's normalization: dots are
 * (lambda - a)/a and the prediction line is delta_a/a, split into real and
 * imaginary parts against theta. Extraction is a pure function of the CSV
 * contents.
 */

import { CompareTable, Table } from "./csv";

export interface Point {
  x: number;
  y: number;
}

export interface DeviationPanelsSeries {
  theta: number[];
  actualRe: number[];
  actualIm: number[];
  predRe: number[];
  predIm: number[];
}

function divideByImage(
  re: number,
  im: number,
  imageRe: number,
  imageIm: number,
): { re: number; im: number } {
  const d = imageRe * imageRe + imageIm * imageIm;
  return {
    re: (re * imageRe + im * imageIm) / d,
    im: (im * imageRe - re * imageIm) / d,
  };
}

export function deviationPanels(table: CompareTable): DeviationPanelsSeries {
  const rows = [...table.rows].sort((a, b) => a.theta - b.theta);
  const out: DeviationPanelsSeries = {
    theta: [],
    actualRe: [],
    actualIm: [],
    predRe: [],
    predIm: [],
  };
  for (const r of rows) {
    const act = divideByImage(r.actualDevRe, r.actualDevIm, r.imageRe, r.imageIm);
    const pred = divideByImage(r.predDevRe, r.predDevIm, r.imageRe, r.imageIm);
    out.theta.push(r.theta);
    out.actualRe.push(act.re);
    out.actualIm.push(act.im);
    out.predRe.push(pred.re);
    out.predIm.push(pred.im);
  }
  return out;
}

export interface ScatterSeries {
  /** one dot cloud per input table, in input order */
  dots: Point[][];
  /** image curve from the first table carrying image columns */
  curve: Point[];
}

export function scatterSeries(tables: Table[]): ScatterSeries {
  const dots: Point[][] = tables.map((t) => {
    if (t.kind === "compare") {
      return t.rows.map((r) => ({ x: r.lambdaRe, y: r.lambdaIm }));
    }
    return t.rows.map((r) => ({ x: r.lambdaRe, y: r.lambdaIm }));
  });
  let curve: Point[] = [];
  for (const t of tables) {
    if (t.kind === "compare" && t.rows.length > 0) {
      curve = [...t.rows]
        .sort((a, b) => a.theta - b.theta)
        .map((r) => ({ x: r.imageRe, y: r.imageIm }));
      break;
    }
  }
  return { dots, curve };
}
