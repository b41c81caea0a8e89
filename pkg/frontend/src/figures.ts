import { writeFileSync } from "node:fs";

import {
  column,
  columnIndex,
  CsvTable,
  readTable,
  SchemaError,
} from "./csv.js";
import {
  extent,
  line,
  PALETTE,
  path,
  polylinePath,
  scaleLinear,
  scaleLog10,
  serialize,
  svgDocument,
  text,
} from "./svg.js";

export type FigureKind = "contours" | "eos-surface" | "field" | "pss";

export interface FigureSpec {
  kind: FigureKind;
  input: string;
  output: string;
  width?: number;
  height?: number;
}

const MARGIN = 45;

export interface Polyline {
  level: number;
  points: Array<[number, number]>;
}

/** Split a contours table (h,t,x,y) into one polyline per level, in file
 * order. */
export function groupContours(table: CsvTable): Polyline[] {
  const ih = columnIndex(table, "h");
  const ix = columnIndex(table, "x");
  const iy = columnIndex(table, "y");
  const out: Polyline[] = [];
  let current: Polyline | null = null;
  for (const row of table.rows) {
    if (current === null || row[ih] !== current.level) {
      current = { level: row[ih], points: [] };
      out.push(current);
    }
    current.points.push([row[ix], row[iy]]);
  }
  return out;
}

export function isClosed(pts: Array<[number, number]>, tol = 1e-5): boolean {
  const [x0, y0] = pts[0];
  const [x1, y1] = pts[pts.length - 1];
  return Math.hypot(x1 - x0, y1 - y0) < tol;
}

export function boundingBox(pts: Array<[number, number]>) {
  return {
    x: extent(pts.map((p) => p[0])),
    y: extent(pts.map((p) => p[1])),
  };
}

/** True when box b sits strictly inside box a. */
export function nested(
  a: ReturnType<typeof boundingBox>,
  b: ReturnType<typeof boundingBox>,
): boolean {
  return (
    b.x.min > a.x.min && b.x.max < a.x.max &&
    b.y.min > a.y.min && b.y.max < a.y.max
  );
}

function frame(
  doc: ReturnType<typeof svgDocument>,
  xLabel: string,
  yLabel: string,
) {
  const { width: w, height: h } = doc;
  line(doc, MARGIN, h - MARGIN, w - MARGIN, h - MARGIN);
  line(doc, MARGIN, MARGIN, MARGIN, h - MARGIN);
  text(doc, w / 2, h - 8, xLabel);
  text(doc, 12, MARGIN - 10, yLabel, "start");
}

function renderContours(table: CsvTable, spec: FigureSpec): string {
  if (table.command !== "contours") {
    throw new SchemaError(`expected a contours table, got "${table.command}"`);
  }
  const lines = groupContours(table);
  const doc = svgDocument(spec.width ?? 480, spec.height ?? 480);
  const ex = extent(column(table, "x"));
  const ey = extent(column(table, "y"));
  const sx = scaleLinear(ex, MARGIN, doc.width - MARGIN);
  const sy = scaleLinear(ey, doc.height - MARGIN, MARGIN); // y grows upward
  frame(doc, "x", "y");
  lines.forEach((pl, i) => {
    const pts = pl.points.map(
      (p) => [sx(p[0]), sy(p[1])] as [number, number],
    );
    path(doc, polylinePath(pts) + " Z", PALETTE[i % PALETTE.length], "none",
      "contour");
    text(doc, sx(pl.points[0][0]) + 4, sy(pl.points[0][1]) - 4,
      `H=${pl.level.toPrecision(3)}`, "start");
  });
  return serialize(doc);
}

function renderPss(table: CsvTable, spec: FigureSpec): string {
  if (table.command !== "hdiff") {
    throw new SchemaError(`expected an hdiff table, got "${table.command}"`);
  }
  const h = column(table, "h");
  const pss = column(table, "pss");
  const doc = svgDocument(spec.width ?? 520, spec.height ?? 380);
  const sx = scaleLinear(extent(h), MARGIN, doc.width - MARGIN);
  const ep = extent(pss);
  const sy = scaleLog10(ep, doc.height - MARGIN, MARGIN);
  frame(doc, "H", "pss (log scale)");
  // decade ticks on the log axis
  for (
    let d = Math.ceil(Math.log10(ep.min));
    d <= Math.floor(Math.log10(ep.max));
    d++
  ) {
    const y = sy(10 ** d);
    line(doc, MARGIN - 4, y, MARGIN, y);
    text(doc, MARGIN - 6, y + 3, `1e${d}`, "end");
  }
  const pts = h.map((v, i) => [sx(v), sy(pss[i])] as [number, number]);
  path(doc, polylinePath(pts), PALETTE[0], "none", "pss");
  return serialize(doc);
}

function renderEosSurface(table: CsvTable, spec: FigureSpec): string {
  if (table.command !== "eos") {
    throw new SchemaError(`expected an eos table, got "${table.command}"`);
  }
  const alpha = column(table, "alpha");
  const theta = column(table, "theta");
  const force = column(table, "f_alpha_abs");
  const iErr = columnIndex(table, "error");
  const keep = table.raw.map((r) => r[iErr] === "");

  // oblique projection of (theta, |F|, alpha) onto the page: alpha runs
  // along the diagonal depth axis
  const ea = extent(alpha.filter((_, i) => keep[i]));
  const et = extent(theta.filter((_, i) => keep[i]));
  const ef = extent(force.filter((_, i) => keep[i]));
  const doc = svgDocument(spec.width ?? 520, spec.height ?? 420);
  const depth = 90;
  const sx = scaleLinear(et, MARGIN, doc.width - MARGIN - depth);
  const sy = scaleLinear(ef, doc.height - MARGIN, MARGIN + depth);
  const sd = scaleLinear(ea, 0, depth);
  const project = (t: number, f: number, a: number): [number, number] => [
    sx(t) + sd(a),
    sy(f) - sd(a),
  ];
  frame(doc, "theta", "|F|");

  // one iso-alpha polyline per distinct alpha, rows in grid order
  const levels = [...new Set(alpha.filter((_, i) => keep[i]))];
  levels.forEach((a, li) => {
    const pts: Array<[number, number]> = [];
    for (let i = 0; i < alpha.length; i++) {
      if (keep[i] && alpha[i] === a) {
        pts.push(project(theta[i], force[i], a));
      }
    }
    path(doc, polylinePath(pts), PALETTE[li % PALETTE.length], "none",
      "iso-alpha");
    text(doc, pts[pts.length - 1][0] + 4, pts[pts.length - 1][1],
      `a=${a}`, "start");
  });
  return serialize(doc);
}

function renderField(table: CsvTable, spec: FigureSpec): string {
  for (const name of ["x", "y", "u", "v"]) columnIndex(table, name);
  const xs = column(table, "x");
  const ys = column(table, "y");
  const us = column(table, "u");
  const vs = column(table, "v");
  const doc = svgDocument(spec.width ?? 480, spec.height ?? 480);
  const sx = scaleLinear(extent(xs), MARGIN, doc.width - MARGIN);
  const sy = scaleLinear(extent(ys), doc.height - MARGIN, MARGIN);
  frame(doc, "x", "y");
  const maxLen = Math.max(...xs.map((_, i) => Math.hypot(us[i], vs[i]))) || 1;
  const arrow = 22 / maxLen; // longest arrow is 22 px
  for (let i = 0; i < xs.length; i++) {
    const x0 = sx(xs[i]);
    const y0 = sy(ys[i]);
    const x1 = x0 + us[i] * arrow;
    const y1 = y0 - vs[i] * arrow;
    path(doc, polylinePath([[x0, y0], [x1, y1]]), "#333", "none", "arrow");
    doc.parts.push(
      `<circle cx="${x0.toFixed(2)}" cy="${y0.toFixed(2)}" r="1.5" ` +
        `fill="#333"/>`,
    );
  }
  return serialize(doc);
}

const RENDERERS: Record<FigureKind, (t: CsvTable, s: FigureSpec) => string> = {
  contours: renderContours,
  pss: renderPss,
  "eos-surface": renderEosSurface,
  field: renderField,
};

/** Render a figure to SVG text without touching the filesystem output. */
export function renderToString(spec: FigureSpec): string {
  const renderer = RENDERERS[spec.kind];
  if (!renderer) {
    throw new SchemaError(`unknown figure kind "${spec.kind}"`);
  }
  return renderer(readTable(spec.input), spec);
}

export function render(spec: FigureSpec): void {
  writeFileSync(spec.output, renderToString(spec));
}
