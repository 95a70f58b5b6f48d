/**
 * Figure CLI.
 *
 *   node dist/cli.js <fig2|...|fig9|all> --data <dir> --out <dir>
 *
 * --data points at a directory produced by scripts/make_data.sh (one
 * subdirectory per simulator run plus modal verification tables);
 * --out receives one SVG per figure.
 */

import { defaultSpecs, makeFigure } from "./figures.js";

function parseArgs(argv: string[]): { target: string; data: string; out: string } {
  const [target, ...rest] = argv;
  let data = "data";
  let out = "figures";
  for (let i = 0; i < rest.length; i += 2) {
    const key = rest[i];
    const val = rest[i + 1];
    if (val === undefined) throw new Error(`missing value for ${key}`);
    if (key === "--data") data = val;
    else if (key === "--out") out = val;
    else throw new Error(`unknown flag: ${key}`);
  }
  if (!target) throw new Error("usage: cli.js <fig2..fig9|all> [--data DIR] [--out DIR]");
  return { target, data, out };
}

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
  const specs = defaultSpecs(args.data, args.out);
  const selected =
    args.target === "all" ? specs : specs.filter((s) => s.id === args.target);
  if (selected.length === 0) {
    console.error(`unknown figure: ${args.target}`);
    return 1;
  }
  for (const spec of selected) {
    try {
      const path = makeFigure(spec);
      console.log(`wrote ${path}`);
    } catch (err) {
      console.error(`${spec.id}: ${err instanceof Error ? err.message : err}`);
      return 2;
    }
  }
  return 0;
}

process.exit(main(process.argv.slice(2)));
