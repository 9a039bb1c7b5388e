#!/usr/bin/env node
/**
 * `render --config <figure.json> --out <figure.svg>`
 *
 * The config holds a FigureSpec; CSV paths inside it resolve relative to
 * the config file's directory, so a fixture set travels as one folder.
 */

import { readFileSync, realpathSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";
import { fileURLToPath } from "node:url";

import { renderFigure, type FigureSpec } from "./figure.js";

function usage(): never {
  process.stderr.write(
    "usage: render --config <figure.json> --out <figure.svg>\n");
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv[0] !== "render") usage();
  let configPath: string | null = null;
  let outPath: string | null = null;
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) usage();
    if (flag === "--config") configPath = value;
    else if (flag === "--out") outPath = value;
    else usage();
  }
  if (configPath === null || outPath === null) usage();
  try {
    const spec = JSON.parse(readFileSync(configPath, "utf8")) as FigureSpec;
    const svg = renderFigure(spec, dirname(configPath));
    writeFileSync(outPath, svg);
    process.stdout.write(`wrote ${spec.panels.length} panels to ${outPath}\n`);
    return 0;
  } catch (error) {
    const message = error instanceof Error ? error.message : String(error);
    process.stderr.write(`error: ${message}\n`);
    return 1;
  }
}

let invokedDirectly = false;
if (process.argv[1] !== undefined) {
  try {
    invokedDirectly =
      realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
  } catch {
    invokedDirectly = false;
  }
}
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
