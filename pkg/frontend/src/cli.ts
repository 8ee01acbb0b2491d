/** plots render --figure <id> --in <dir> --out <dir>
 *
 * Renders simulator CSV exports into one SVG and one PNG per figure.
 * Outputs are byte-stable for identical inputs; rendering never mutates
 * the input directory.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { buildFigure, FIGURE_IDS } from "./figures.js";
import { renderPng, renderSvg } from "./charts.js";
import { CsvError } from "./csv.js";

function usage(): string {
  return "usage: plots render --figure <" + FIGURE_IDS.join("|") +
    "> --in <dir> --out <dir>";
}

export function main(argv: string[]): number {
  const args = argv.slice(2);
  if (args[0] !== "render") {
    process.stderr.write(usage() + "\n");
    return 2;
  }
  const opts: Record<string, string> = {};
  for (let i = 1; i < args.length; i += 2) {
    const key = args[i];
    const val = args[i + 1];
    if (!key.startsWith("--") || val === undefined) {
      process.stderr.write(usage() + "\n");
      return 2;
    }
    opts[key.slice(2)] = val;
  }
  const figure = opts["figure"];
  const inDir = opts["in"];
  const outDir = opts["out"];
  if (!figure || !inDir || !outDir) {
    process.stderr.write(usage() + "\n");
    return 2;
  }
  try {
    const fig = buildFigure(figure, inDir);
    mkdirSync(outDir, { recursive: true });
    writeFileSync(join(outDir, `${figure}.svg`), renderSvg(fig));
    writeFileSync(join(outDir, `${figure}.png`), renderPng(fig));
  } catch (err) {
    if (err instanceof CsvError || err instanceof Error) {
      process.stderr.write(`plots: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv));
}
