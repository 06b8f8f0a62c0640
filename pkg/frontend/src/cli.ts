#!/usr/bin/env node
/**
 * Figure renderer CLI.
 *
 *   qdarwin-render --spec figure.json
 *   qdarwin-render --kind heatmap --out fig4_N6 data/fig4_N6_heatmap.csv
 *
 * The JSON spec mirrors FigureSpec: {kind, inputs, output, title?, xLabel?,
 * yLabel?, tSelection?}. Exit codes: 0 ok, 2 bad spec or schema mismatch,
 * 4 I/O failure.
 */

import { readFileSync } from "node:fs";

import { FigureKind, FigureSpec, render } from "./render.js";
import { SchemaError } from "./schema.js";

const KINDS: FigureKind[] = ["heatmap", "profile-lines", "tmi-series"];

function usage(): never {
  console.error(
    "usage: qdarwin-render --spec <figure.json>\n" +
      "   or: qdarwin-render --kind <heatmap|profile-lines|tmi-series> " +
      "--out <path> [--title T] [--x-label X] [--y-label Y] [--t V]... <csv>...",
  );
  process.exit(2);
}

function parseArgs(argv: string[]): FigureSpec {
  const inputs: string[] = [];
  const tSelection: number[] = [];
  let specPath: string | undefined;
  let kind: string | undefined;
  let output: string | undefined;
  let title: string | undefined;
  let xLabel: string | undefined;
  let yLabel: string | undefined;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) usage();
      return argv[i];
    };
    if (arg === "--spec") specPath = next();
    else if (arg === "--kind") kind = next();
    else if (arg === "--out") output = next();
    else if (arg === "--title") title = next();
    else if (arg === "--x-label") xLabel = next();
    else if (arg === "--y-label") yLabel = next();
    else if (arg === "--t") tSelection.push(Number(next()));
    else if (arg === "--help" || arg === "-h") usage();
    else if (arg.startsWith("--")) usage();
    else inputs.push(arg);
  }

  if (specPath !== undefined) {
    const raw = JSON.parse(readFileSync(specPath, "utf8"));
    if (!KINDS.includes(raw.kind)) {
      throw new SchemaError(`unknown figure kind "${raw.kind}"`, specPath);
    }
    if (!Array.isArray(raw.inputs) || typeof raw.output !== "string") {
      throw new SchemaError("spec needs inputs[] and output", specPath);
    }
    return raw as FigureSpec;
  }
  if (kind === undefined || output === undefined || inputs.length === 0) {
    usage();
  }
  if (!KINDS.includes(kind as FigureKind)) {
    throw new SchemaError(`unknown figure kind "${kind}"`, "(args)");
  }
  return {
    kind: kind as FigureKind,
    inputs,
    output,
    title,
    xLabel,
    yLabel,
    tSelection: tSelection.length > 0 ? tSelection : undefined,
  };
}

try {
  const spec = parseArgs(process.argv.slice(2));
  const result = render(spec);
  console.log(result.svgPath);
  console.log(result.pngPath);
} catch (error) {
  if (error instanceof SchemaError) {
    console.error(error.message);
    process.exit(2);
  }
  if (error instanceof Error && "code" in error) {
    console.error(`I/O error: ${error.message}`);
    process.exit(4);
  }
  throw error;
}
