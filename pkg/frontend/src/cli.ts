/**
 * render --input report.csv[,more.csv] --figure deviation-panels|scatter
 *        --out fig.png [--title text]
 *
 * Exit codes: 0 success, 2 bad arguments / unreadable input / schema
 * mismatch (the message names the missing column).
 */

import { SchemaError } from "./csv";
import { Figure, PlotJob, render } from "./render";

const FIGURES: Record<string, Figure> = {
  scatter: "scatter",
  "deviation-panels": "deviation-panels",
};

function usage(): string {
  return (
    "usage: render --input <csv[,csv...]> --figure <scatter|deviation-panels> " +
    "--out <png> [--title <text>]"
  );
}

export function parseArgs(argv: string[]): PlotJob {
  if (argv[0] !== "render") {
    throw new Error(`unknown command ${argv[0] ?? "(none)"}; ${usage()}`);
  }
  const opts: Record<string, string> = {};
  for (let i = 1; i < argv.length; i += 2) {
    const key = argv[i];
    const val = argv[i + 1];
    if (!key.startsWith("--") || val === undefined) {
      throw new Error(`bad argument ${key}; ${usage()}`);
    }
    opts[key.slice(2)] = val;
  }
  const missing = ["input", "figure", "out"].filter((k) => !(k in opts));
  if (missing.length > 0) {
    throw new Error(`missing --${missing[0]}; ${usage()}`);
  }
  const figure = FIGURES[opts.figure];
  if (!figure) {
    throw new Error(`unknown figure ${opts.figure}; ${usage()}`);
  }
  return {
    inputs: opts.input.split(",").filter((s) => s.length > 0),
    figure,
    output: opts.out,
    title: opts.title,
  };
}

export function main(argv: string[]): number {
  let job: PlotJob;
  try {
    job = parseArgs(argv);
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  try {
    const result = render(job);
    console.log(`wrote ${result.written} (${result.nRows} rows)`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema mismatch: ${err.message}`);
      return 2;
    }
    if ((err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`cannot read input: ${(err as Error).message}`);
      return 2;
    }
    console.error((err as Error).message);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
