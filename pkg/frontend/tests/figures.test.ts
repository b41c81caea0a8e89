import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { column, readTable, SchemaError } from "../src/csv.js";
import {
  boundingBox,
  groupContours,
  isClosed,
  nested,
  render,
  renderToString,
} from "../src/figures.js";

const fixture = (name: string) =>
  fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));

describe("contours figure", () => {
  const table = readTable(fixture("contours.csv"));
  const lines = groupContours(table);

  it("contains four closed level curves", () => {
    expect(lines.length).toBe(4);
    expect(lines.map((l) => l.points.length)).toEqual([256, 256, 256, 256]);
    for (const l of lines) {
      expect(isClosed(l.points)).toBe(true);
    }
  });

  it("curves are strictly nested, outermost first", () => {
    const boxes = lines.map((l) => boundingBox(l.points));
    for (let i = 1; i < boxes.length; i++) {
      expect(nested(boxes[i - 1], boxes[i])).toBe(true);
    }
  });

  it("renders one path per curve", () => {
    const svg = renderToString({
      kind: "contours",
      input: fixture("contours.csv"),
      output: "",
    });
    expect(svg.match(/class="contour"/g)?.length).toBe(4);
    expect(svg).toContain('xmlns="http://www.w3.org/2000/svg"');
    expect(svg).toContain("H=3.40");
  });

  it("is deterministic", () => {
    const spec = {
      kind: "contours" as const,
      input: fixture("contours.csv"),
      output: "",
    };
    expect(renderToString(spec)).toBe(renderToString(spec));
  });

  it("rejects a table from a different command", () => {
    expect(() =>
      renderToString({
        kind: "contours",
        input: fixture("pss.csv"),
        output: "",
      }),
    ).toThrow(SchemaError);
  });
});

describe("pss figure", () => {
  const spec = {
    kind: "pss" as const,
    input: fixture("pss.csv"),
    output: "",
  };

  it("renders the density on a log axis with decade ticks", () => {
    const svg = renderToString(spec);
    expect(svg.match(/class="pss"/g)?.length).toBe(1);
    // fixture densities span several decades, so tick labels appear
    expect(svg).toMatch(/>1e-?\d+</);
    expect(svg).toContain("log scale");
  });

  it("positions points by the logarithm of the density", () => {
    const table = readTable(fixture("pss.csv"));
    const pss = column(table, "pss");
    const d = renderToString(spec).match(/<path d="([^"]+)"[^>]*class="pss"/);
    expect(d).not.toBeNull();
    const ys = [...d![1].matchAll(/[ML]-?[\d.]+ (-?[\d.]+)/g)].map((m) =>
      Number(m[1]),
    );
    expect(ys.length).toBe(pss.length);
    // pixel position must be affine in log10(pss): reconstruct the map
    // from the endpoints and check every interior point against it
    const lo = Math.log10(Math.min(...pss));
    const hi = Math.log10(Math.max(...pss));
    const k = (ys[ys.length - 1] - ys[0]) / (hi - lo);
    for (let i = 0; i < pss.length; i++) {
      const predicted = ys[0] + (Math.log10(pss[i]) - lo) * k;
      expect(Math.abs(ys[i] - predicted)).toBeLessThan(0.02);
    }
  });

  it("rejects a non-hdiff table", () => {
    expect(() =>
      renderToString({ kind: "pss", input: fixture("eos.csv"), output: "" }),
    ).toThrow(SchemaError);
  });
});

describe("eos-surface figure", () => {
  it("draws one polyline per alpha level", () => {
    const svg = renderToString({
      kind: "eos-surface",
      input: fixture("eos.csv"),
      output: "",
    });
    expect(svg.match(/class="iso-alpha"/g)?.length).toBe(5);
    expect(svg).toContain("a=0.5");
    expect(svg).toContain("a=1.2");
  });
});

describe("field figure", () => {
  it("draws one arrow per sample point", () => {
    const svg = renderToString({
      kind: "field",
      input: fixture("field.csv"),
      output: "",
    });
    expect(svg.match(/class="arrow"/g)?.length).toBe(9);
    expect(svg.match(/<circle /g)?.length).toBe(9);
  });

  it("requires the u and v columns", () => {
    expect(() =>
      renderToString({
        kind: "field",
        input: fixture("contours.csv"),
        output: "",
      }),
    ).toThrow(/missing column "u"/);
  });
});

describe("render", () => {
  it("writes the SVG to disk", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const out = join(dir, "contours.svg");
    render({ kind: "contours", input: fixture("contours.csv"), output: out });
    expect(readFileSync(out, "utf-8")).toBe(
      renderToString({
        kind: "contours",
        input: fixture("contours.csv"),
        output: "",
      }),
    );
  });
});
