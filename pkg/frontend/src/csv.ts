/** CSV reading for the simulator's exports: header row, '.' decimals. */

import { readFileSync } from "node:fs";

export class CsvError extends Error {
  constructor(file: string, row: number, detail: string) {
    super(`${file}:${row}: ${detail}`);
    this.name = "CsvError";
  }
}

export interface Table {
  columns: string[];
  rows: number[][];
}

export function readCsv(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch {
    throw new CsvError(path, 0, "file missing or unreadable");
  }
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length < 2) {
    throw new CsvError(path, 1, "no data rows");
  }
  const columns = lines[0].split(",").map((s) => s.trim());
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new CsvError(path, i + 1,
        `expected ${columns.length} fields, got ${parts.length}`);
    }
    const row = parts.map((p) => Number(p));
    const bad = row.findIndex((v) => !Number.isFinite(v));
    if (bad >= 0) {
      throw new CsvError(path, i + 1,
        `field '${columns[bad]}' is not a finite number: ${parts[bad]}`);
    }
    rows.push(row);
  }
  return { columns, rows };
}

export function column(t: Table, name: string, file: string): number[] {
  const i = t.columns.indexOf(name);
  if (i < 0) {
    throw new CsvError(file, 1, `missing column '${name}'`);
  }
  return t.rows.map((r) => r[i]);
}
