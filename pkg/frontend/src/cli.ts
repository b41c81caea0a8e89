#!/usr/bin/env node
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { SchemaError } from "./csv.js";
import { FigureKind, render } from "./figures.js";

const KINDS: FigureKind[] = ["contours", "eos-surface", "field", "pss"];

const USAGE =
  "usage: lvthermo-figures render --kind <" +
  KINDS.join("|") +
  "> --input <table.csv> --out <figure.svg> [--width N] [--height N]";

export function main(argv: string[]): number {
  if (argv[0] !== "render") {
    process.stderr.write(USAGE + "\n");
    return 2;
  }
  let values;
  try {
    ({ values } = parseArgs({
      args: argv.slice(1),
      options: {
        kind: { type: "string" },
        input: { type: "string" },
        out: { type: "string" },
        width: { type: "string" },
        height: { type: "string" },
      },
    }));
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n${USAGE}\n`);
    return 2;
  }
  const { kind, input, out } = values;
  if (!kind || !input || !out) {
    process.stderr.write(USAGE + "\n");
    return 2;
  }
  if (!KINDS.includes(kind as FigureKind)) {
    process.stderr.write(`unknown kind "${kind}"\n${USAGE}\n`);
    return 2;
  }
  try {
    render({
      kind: kind as FigureKind,
      input,
      output: out,
      width: values.width ? Number(values.width) : undefined,
      height: values.height ? Number(values.height) : undefined,
    });
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (
  process.argv[1] &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(main(process.argv.slice(2)));
}
