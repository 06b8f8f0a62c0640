/**
 * CSV schema layer for the simulator's output files.
 *
 * Two row shapes exist: fragment profiles and TMI series. Headers must
 * match the producer's schema exactly (same columns, same order); any
 * mismatch is reported with the offending column name so a broken pipeline
 * points at itself.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export const PROFILE_COLUMNS = [
  "t",
  "fN",
  "f",
  "I_avg_bits",
  "I_over_HS",
  "n_samples",
  "enumerated",
] as const;

export const TMI_COLUMNS = ["t", "I3_avg_bits", "n_partitions", "enumerated"] as const;

export interface ProfileRow {
  t: number;
  fN: number;
  f: number;
  iAvgBits: number;
  iOverHs: number;
  nSamples: number;
  enumerated: boolean;
}

export interface TmiRow {
  t: number;
  i3AvgBits: number;
  nPartitions: number;
  enumerated: boolean;
}

/** Schema violation carrying the column it was detected in. */
export class SchemaError extends Error {
  constructor(
    message: string,
    readonly file: string,
    readonly column?: string,
  ) {
    super(`schema mismatch in ${file}: ${message}`);
    this.name = "SchemaError";
  }
}

function parseTable(path: string): string[][] {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`unparseable CSV (${first.message})`, path);
  }
  return parsed.data;
}

function checkHeader(path: string, header: string[], expected: readonly string[]): void {
  for (const column of expected) {
    if (!header.includes(column)) {
      throw new SchemaError(`missing column "${column}"`, path, column);
    }
  }
  for (const column of header) {
    if (!expected.includes(column)) {
      throw new SchemaError(`unexpected column "${column}"`, path, column);
    }
  }
  expected.forEach((column, i) => {
    if (header[i] !== column) {
      throw new SchemaError(
        `column "${header[i]}" out of order (expected "${column}" at position ${i})`,
        path,
        header[i],
      );
    }
  });
}

function numberField(
  path: string,
  raw: string,
  column: string,
  line: number,
  allowNan = false,
): number {
  const value = Number(raw);
  if (Number.isNaN(value) && !(allowNan && raw.toLowerCase() === "nan")) {
    throw new SchemaError(`non-numeric value "${raw}" in column "${column}" (line ${line})`, path, column);
  }
  return value;
}

function boolField(path: string, raw: string, column: string, line: number): boolean {
  if (raw !== "true" && raw !== "false") {
    throw new SchemaError(`expected true/false in column "${column}" (line ${line}), got "${raw}"`, path, column);
  }
  return raw === "true";
}

export function readProfileCsv(path: string): ProfileRow[] {
  const table = parseTable(path);
  if (table.length === 0) {
    throw new SchemaError("file is empty", path);
  }
  checkHeader(path, table[0], PROFILE_COLUMNS);
  return table.slice(1).map((row, i) => {
    const line = i + 2;
    if (row.length !== PROFILE_COLUMNS.length) {
      throw new SchemaError(`row with ${row.length} fields (line ${line})`, path);
    }
    return {
      t: numberField(path, row[0], "t", line),
      fN: numberField(path, row[1], "fN", line),
      f: numberField(path, row[2], "f", line),
      iAvgBits: numberField(path, row[3], "I_avg_bits", line),
      iOverHs: numberField(path, row[4], "I_over_HS", line, true),
      nSamples: numberField(path, row[5], "n_samples", line),
      enumerated: boolField(path, row[6], "enumerated", line),
    };
  });
}

export function readTmiCsv(path: string): TmiRow[] {
  const table = parseTable(path);
  if (table.length === 0) {
    throw new SchemaError("file is empty", path);
  }
  checkHeader(path, table[0], TMI_COLUMNS);
  return table.slice(1).map((row, i) => {
    const line = i + 2;
    if (row.length !== TMI_COLUMNS.length) {
      throw new SchemaError(`row with ${row.length} fields (line ${line})`, path);
    }
    return {
      t: numberField(path, row[0], "t", line),
      i3AvgBits: numberField(path, row[1], "I3_avg_bits", line),
      nPartitions: numberField(path, row[2], "n_partitions", line),
      enumerated: boolField(path, row[3], "enumerated", line),
    };
  });
}
