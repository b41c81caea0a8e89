/** Minimal deterministic SVG assembly: no DOM, just strings. */

export interface Extent {
  min: number;
  max: number;
}

export function extent(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (min > max) throw new Error("extent of empty or all-NaN data");
  if (min === max) {
    min -= 0.5;
    max += 0.5;
  }
  return { min, max };
}

/** Linear map from a data extent onto pixel range [a, b]. */
export function scaleLinear(e: Extent, a: number, b: number) {
  const k = (b - a) / (e.max - e.min);
  return (v: number) => a + (v - e.min) * k;
}

export function scaleLog10(e: Extent, a: number, b: number) {
  if (e.min <= 0) throw new Error("log scale needs positive data");
  const lo = Math.log10(e.min);
  const hi = Math.log10(e.max);
  const k = (b - a) / (hi - lo);
  return (v: number) => a + (Math.log10(v) - lo) * k;
}

const FMT = (v: number) => {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

export function polylinePath(pts: Array<[number, number]>): string {
  return pts
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${FMT(x)} ${FMT(y)}`)
    .join(" ");
}

export interface SvgDoc {
  width: number;
  height: number;
  parts: string[];
}

export function svgDocument(width: number, height: number): SvgDoc {
  return { width, height, parts: [] };
}

export function path(
  doc: SvgDoc,
  d: string,
  stroke: string,
  fill = "none",
  cls = "",
): void {
  const c = cls ? ` class="${cls}"` : "";
  doc.parts.push(
    `<path d="${d}" stroke="${stroke}" fill="${fill}" stroke-width="1.2"${c}/>`,
  );
}

export function line(
  doc: SvgDoc,
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  stroke = "#444",
): void {
  doc.parts.push(
    `<line x1="${FMT(x1)}" y1="${FMT(y1)}" x2="${FMT(x2)}" y2="${FMT(y2)}" ` +
      `stroke="${stroke}" stroke-width="1"/>`,
  );
}

export function text(
  doc: SvgDoc,
  x: number,
  y: number,
  content: string,
  anchor: "start" | "middle" | "end" = "middle",
): void {
  doc.parts.push(
    `<text x="${FMT(x)}" y="${FMT(y)}" text-anchor="${anchor}" ` +
      `font-family="sans-serif" font-size="11">${content}</text>`,
  );
}

export function serialize(doc: SvgDoc): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${doc.width}" ` +
    `height="${doc.height}" viewBox="0 0 ${doc.width} ${doc.height}">\n` +
    doc.parts.join("\n") +
    "\n</svg>\n"
  );
}

/** Categorical stroke palette, stable across runs. */
export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];
