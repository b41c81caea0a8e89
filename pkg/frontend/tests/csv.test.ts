import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  column,
  columnIndex,
  parseTable,
  readTable,
  SchemaError,
} from "../src/csv.js";

const fixture = (name: string) =>
  fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));

describe("readTable", () => {
  it("parses the archived contours table", () => {
    const t = readTable(fixture("contours.csv"));
    expect(t.schemaVersion).toBe(1);
    expect(t.command).toBe("contours");
    expect(t.columns).toEqual(["h", "t", "x", "y"]);
    expect(t.config).toMatchObject({ alpha: 1.0 });
    expect(t.rows.length).toBe(4 * 256);
    expect(t.raw.length).toBe(t.rows.length);
  });

  it("parses the archived pss table", () => {
    const t = readTable(fixture("pss.csv"));
    expect(t.command).toBe("hdiff");
    expect(t.columns).toEqual(["h", "b", "a", "pss"]);
  });
});

describe("parseTable", () => {
  const body = "x,y\n1,2\n3,4\n";

  it("rejects a missing schema_version", () => {
    expect(() => parseTable(`# command: orbit\n${body}`)).toThrow(SchemaError);
  });

  it("rejects an unsupported schema_version", () => {
    expect(() =>
      parseTable(`# schema_version: 2\n# command: orbit\n${body}`),
    ).toThrow(/schema_version 2 unsupported/);
  });

  it("rejects a missing header row", () => {
    expect(() => parseTable("# schema_version: 1\n")).toThrow(
      /no column header/,
    );
  });

  it("rejects ragged rows", () => {
    expect(() =>
      parseTable("# schema_version: 1\nx,y\n1,2,3\n"),
    ).toThrow(/3 cells/);
  });

  it("keeps raw cells alongside the numeric view", () => {
    const t = parseTable("# schema_version: 1\nx,note\n1,abc\n");
    expect(t.rows[0][0]).toBe(1);
    expect(Number.isNaN(t.rows[0][1])).toBe(true);
    expect(t.raw[0][1]).toBe("abc");
  });
});

describe("column helpers", () => {
  const t = parseTable("# schema_version: 1\nx,y\n1,2\n3,4\n");

  it("extracts a column by name", () => {
    expect(column(t, "y")).toEqual([2, 4]);
  });

  it("raises SchemaError for a missing column", () => {
    expect(() => columnIndex(t, "z")).toThrow(SchemaError);
  });
});
