import { readFileSync } from "node:fs";

export const SUPPORTED_SCHEMA_VERSION = 1;

export interface CsvTable {
  schemaVersion: number;
  command: string;
  config: Record<string, unknown>;
  columns: string[];
  /** numeric view of the data; non-numeric cells become NaN */
  rows: number[][];
  /** raw string cells, same shape as rows */
  raw: string[][];
}

export class SchemaError extends Error {}

/**
 * Parse a CSV file produced by the analysis CLI: `#` comment lines carrying
 * schema_version / command / config (JSON), one column-header row, then
 * comma-separated data rows.
 */
export function readTable(path: string): CsvTable {
  return parseTable(readFileSync(path, "utf-8"), path);
}

export function parseTable(text: string, label = "<string>"): CsvTable {
  let schemaVersion = NaN;
  let command = "";
  let config: Record<string, unknown> = {};
  let columns: string[] | null = null;
  const rows: number[][] = [];
  const raw: string[][] = [];

  for (const line of text.split("\n")) {
    if (line === "") continue;
    if (line.startsWith("#")) {
      const m = line.match(/^#\s*(\w+):\s*(.*)$/);
      if (!m) continue;
      if (m[1] === "schema_version") schemaVersion = Number(m[2]);
      else if (m[1] === "command") command = m[2];
      else if (m[1] === "config") config = JSON.parse(m[2]);
      continue;
    }
    const cells = line.split(",");
    if (columns === null) {
      columns = cells;
      continue;
    }
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `${label}: row has ${cells.length} cells, header has ${columns.length}`,
      );
    }
    raw.push(cells);
    rows.push(cells.map(Number));
  }

  if (!Number.isFinite(schemaVersion)) {
    throw new SchemaError(`${label}: missing schema_version header`);
  }
  if (schemaVersion !== SUPPORTED_SCHEMA_VERSION) {
    throw new SchemaError(
      `${label}: schema_version ${schemaVersion} unsupported ` +
        `(expected ${SUPPORTED_SCHEMA_VERSION})`,
    );
  }
  if (columns === null) {
    throw new SchemaError(`${label}: no column header row`);
  }
  return { schemaVersion, command, config, columns, rows, raw };
}

/** Index of a required column; SchemaError when absent. */
export function columnIndex(table: CsvTable, name: string): number {
  const i = table.columns.indexOf(name);
  if (i < 0) {
    throw new SchemaError(
      `missing column "${name}" (have: ${table.columns.join(", ")})`,
    );
  }
  return i;
}

/** One numeric column as an array. */
export function column(table: CsvTable, name: string): number[] {
  const i = columnIndex(table, name);
  return table.rows.map((r) => r[i]);
}
