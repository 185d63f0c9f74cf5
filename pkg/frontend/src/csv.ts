/**
 * Readers for the toeplitz-spectra harness CSV schemas.
 *
 * Two schemas are consumed: the `compare` report (eigenvalues matched to
 * grid angles with predicted/actual deviations) and the raw `eig` spectrum
 * dump. `#` lines carry run metadata and are collected into `meta`.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class SchemaError extends Error {
  constructor(message: string, readonly missingColumn?: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface CompareRow {
  j: number;
  theta: number;
  lambdaRe: number;
  lambdaIm: number;
  imageRe: number;
  imageIm: number;
  predDevRe: number;
  predDevIm: number;
  actualDevRe: number;
  actualDevIm: number;
  residualAbs: number;
}

export interface CompareTable {
  kind: "compare";
  rows: CompareRow[];
  meta: Record<string, string>;
}

export interface EigRow {
  index: number;
  lambdaRe: number;
  lambdaIm: number;
}

export interface EigTable {
  kind: "eig";
  rows: EigRow[];
  meta: Record<string, string>;
}

export type Table = CompareTable | EigTable;

export const COMPARE_COLUMNS = [
  "j",
  "theta_j",
  "lambda_re",
  "lambda_im",
  "image_re",
  "image_im",
  "pred_dev_re",
  "pred_dev_im",
  "actual_dev_re",
  "actual_dev_im",
  "residual_abs",
] as const;

export const EIG_COLUMNS = ["index", "lambda_re", "lambda_im"] as const;

function extractMeta(text: string): Record<string, string> {
  const meta: Record<string, string> = {};
  for (const line of text.split(/\r?\n/)) {
    if (!line.startsWith("#")) continue;
    const body = line.slice(1).trim();
    const space = body.indexOf(" ");
    if (space > 0) meta[body.slice(0, space)] = body.slice(space + 1).trim();
  }
  return meta;
}

function parseRows(text: string): { header: string[]; records: number[][] } {
  const result = Papa.parse<string[]>(text.trim(), {
    comments: "#",
    skipEmptyLines: true,
  });
  if (result.errors.length > 0) {
    throw new SchemaError(`CSV parse failure: ${result.errors[0].message}`);
  }
  const data = result.data;
  if (data.length === 0) throw new SchemaError("no header row found");
  const header = data[0].map((h) => h.trim());
  const records = data.slice(1).map((fields, i) => {
    if (fields.length !== header.length) {
      throw new SchemaError(
        `row ${i + 1} has ${fields.length} fields, expected ${header.length}`,
      );
    }
    return fields.map(Number);
  });
  return { header, records };
}

function requireColumns(header: string[], wanted: readonly string[]): number[] {
  return wanted.map((name) => {
    const at = header.indexOf(name);
    if (at < 0) {
      throw new SchemaError(`missing column: ${name}`, name);
    }
    return at;
  });
}

export function parseTable(text: string): Table {
  const meta = extractMeta(text);
  const { header, records } = parseRows(text);
  if (header.includes("image_re")) {
    const idx = requireColumns(header, COMPARE_COLUMNS);
    const rows: CompareRow[] = records.map((f) => ({
      j: f[idx[0]],
      theta: f[idx[1]],
      lambdaRe: f[idx[2]],
      lambdaIm: f[idx[3]],
      imageRe: f[idx[4]],
      imageIm: f[idx[5]],
      predDevRe: f[idx[6]],
      predDevIm: f[idx[7]],
      actualDevRe: f[idx[8]],
      actualDevIm: f[idx[9]],
      residualAbs: f[idx[10]],
    }));
    return { kind: "compare", rows, meta };
  }
  if (header.includes("index")) {
    const idx = requireColumns(header, EIG_COLUMNS);
    const rows: EigRow[] = records.map((f) => ({
      index: f[idx[0]],
      lambdaRe: f[idx[1]],
      lambdaIm: f[idx[2]],
    }));
    return { kind: "eig", rows, meta };
  }
  throw new SchemaError(
    `unrecognized header [${header.join(",")}]; missing column: image_re`,
    "image_re",
  );
}

export function readTable(path: string): Table {
  return parseTable(readFileSync(path, "ascii"));
}
