/**
 * Readers for the two CSV families the pipeline emits.
 *
 * Both formats are fixed-header CSV with optional leading `#` comment
 * lines.  Numbers are plain decimal (written with 17 significant digits
 * upstream, so they round-trip through doubles exactly).  Parse errors
 * carry `path:line: message` so they point at the offending input.
 */

import { readFileSync } from "node:fs";

export const SWEEP_HEADER =
  "model,n,theta,sigma,n_samples,tau_mean,tau_sem,rho_mean,rho_sem," +
  "norm_f_mean,norm_g_mean,norm_s_mean,norm_h_mean," +
  "kappa0_mean,kappa1_mean,kappa2_mean,n_discarded";

export const FIT_HEADER =
  "model,n,theta,A,dA,B,dB,sigma_c,dsigma_c,peak,dpeak," +
  "sigma_star,sigma_star2,residual_sse";

export interface SweepRow {
  model: string;
  n: number;
  theta: number;
  sigma: number;
  n_samples: number;
  tau_mean: number;
  tau_sem: number;
  rho_mean: number;
  rho_sem: number;
  norm_f_mean: number;
  norm_g_mean: number;
  norm_s_mean: number;
  norm_h_mean: number;
  kappa0_mean: number;
  kappa1_mean: number;
  kappa2_mean: number;
  n_discarded: number;
}

export interface FitRow {
  model: string;
  n: number;
  theta: number;
  A: number;
  dA: number;
  B: number;
  dB: number;
  sigma_c: number;
  dsigma_c: number;
  peak: number;
  dpeak: number;
  sigma_star: number;
  sigma_star2: number;
  residual_sse: number;
}

export type Table =
  | { kind: "sweep"; rows: SweepRow[] }
  | { kind: "fit"; rows: FitRow[] };

function parseError(path: string, line: number, message: string): Error {
  return new Error(`${path}:${line}: ${message}`);
}

function parseNumber(
  text: string,
  path: string,
  line: number,
  column: string,
): number {
  const value = Number(text);
  if (text.trim() === "" || Number.isNaN(value)) {
    throw parseError(path, line, `bad number for ${column}: ${JSON.stringify(text)}`);
  }
  return value;
}

/** Split into (lineNo, text) pairs, dropping comments and blank lines. */
function dataLines(path: string): Array<[number, string]> {
  const raw = readFileSync(path, "utf8");
  const out: Array<[number, string]> = [];
  raw.split("\n").forEach((text, index) => {
    const trimmed = text.trim();
    if (trimmed === "" || trimmed.startsWith("#")) return;
    out.push([index + 1, trimmed]);
  });
  return out;
}

function parseRows<Row>(
  path: string,
  header: string,
  build: (cells: string[], line: number) => Row,
): Row[] {
  const lines = dataLines(path);
  const first = lines[0];
  if (first === undefined) {
    throw parseError(path, 1, "missing header");
  }
  if (first[1] !== header) {
    throw parseError(path, first[0], "unexpected header");
  }
  const names = header.split(",");
  const rows: Row[] = [];
  for (const [line, text] of lines.slice(1)) {
    const cells = text.split(",");
    if (cells.length !== names.length) {
      throw parseError(
        path, line, `expected ${names.length} fields, got ${cells.length}`);
    }
    rows.push(build(cells, line));
  }
  return rows;
}

export function readSweepCsv(path: string): SweepRow[] {
  return parseRows(path, SWEEP_HEADER, (cells, line) => {
    const names = SWEEP_HEADER.split(",");
    const num = (i: number) =>
      parseNumber(cells[i] ?? "", path, line, names[i] ?? `field ${i}`);
    return {
      model: cells[0] ?? "",
      n: num(1),
      theta: num(2),
      sigma: num(3),
      n_samples: num(4),
      tau_mean: num(5),
      tau_sem: num(6),
      rho_mean: num(7),
      rho_sem: num(8),
      norm_f_mean: num(9),
      norm_g_mean: num(10),
      norm_s_mean: num(11),
      norm_h_mean: num(12),
      kappa0_mean: num(13),
      kappa1_mean: num(14),
      kappa2_mean: num(15),
      n_discarded: num(16),
    };
  });
}

export function readFitCsv(path: string): FitRow[] {
  return parseRows(path, FIT_HEADER, (cells, line) => {
    const names = FIT_HEADER.split(",");
    const num = (i: number) =>
      parseNumber(cells[i] ?? "", path, line, names[i] ?? `field ${i}`);
    return {
      model: cells[0] ?? "",
      n: num(1),
      theta: num(2),
      A: num(3),
      dA: num(4),
      B: num(5),
      dB: num(6),
      sigma_c: num(7),
      dsigma_c: num(8),
      peak: num(9),
      dpeak: num(10),
      sigma_star: num(11),
      sigma_star2: num(12),
      residual_sse: num(13),
    };
  });
}

/** Read either CSV family, telling them apart by the header line. */
export function readTable(path: string): Table {
  const lines = dataLines(path);
  const first = lines[0];
  if (first === undefined) {
    throw parseError(path, 1, "missing header");
  }
  if (first[1] === SWEEP_HEADER) {
    return { kind: "sweep", rows: readSweepCsv(path) };
  }
  if (first[1] === FIT_HEADER) {
    return { kind: "fit", rows: readFitCsv(path) };
  }
  throw parseError(path, first[0], "unexpected header");
}
