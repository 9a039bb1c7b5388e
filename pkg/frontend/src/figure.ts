/**
 * Panel assembly: each panel plots one or more series from a sweep or fit
 * CSV, with optional dashed overlays (transition-model curves taken from a
 * fit CSV, or power laws fitted to the panel's own points).  A figure is a
 * grid of panels rendered into a single SVG string.
 */

import { readTable, type FitRow, type Table } from "./csv.js";
import {
  fitPowerLaw,
  powerLawValue,
  softplusPrimitive,
  type PowerLaw,
} from "./model.js";
import {
  PALETTE,
  dashedPath,
  dataSeries,
  errorBars,
  esc,
  fmt,
  makeScale,
  padded,
  svgDocument,
  tickLabel,
  ticks,
  type Point,
  type Scale,
  type ScaleKind,
} from "./svg.js";

export interface SigmoidOverlaySpec {
  kind: "sigmoid";
  /** fit CSV path; the row is matched by model/n/theta when given */
  fit: string;
  model?: string;
  n?: number;
  theta?: number;
}

export interface PowerLawOverlaySpec {
  /** dashed log-log line fitted to each series of the panel */
  kind: "powerlaw";
}

export type OverlaySpec = SigmoidOverlaySpec | PowerLawOverlaySpec;

export interface PanelSpec {
  input: string;
  x: string;
  y: string;
  /** defaults: tau_mean -> tau_sem, rho_mean -> rho_sem, fit column -> d<column> */
  yerr?: string | null;
  /** column whose distinct values split the rows into series */
  groupBy?: string;
  xscale?: ScaleKind;
  yscale?: ScaleKind;
  title?: string;
  xlabel?: string;
  ylabel?: string;
  overlay?: OverlaySpec;
}

export interface FigureSpec {
  panels: PanelSpec[];
}

const PANEL_W = 340;
const PANEL_H = 270;
const MARGIN = { left: 62, right: 16, top: 30, bottom: 44 };

interface Series {
  label: string | null;
  xs: number[];
  ys: number[];
  errs: number[];
}

function defaultErrColumn(table: Table, y: string): string | null {
  if (table.kind === "sweep") {
    if (y === "tau_mean") return "tau_sem";
    if (y === "rho_mean") return "rho_sem";
    return null;
  }
  const candidate = `d${y}`;
  const row = table.rows[0];
  return row !== undefined && candidate in row ? candidate : null;
}

function columnValue(
  row: Record<string, unknown>,
  column: string,
  input: string,
): number {
  if (!(column in row)) {
    throw new Error(`${input}: no column ${JSON.stringify(column)}`);
  }
  const value = row[column];
  if (typeof value !== "number") {
    throw new Error(`${input}: column ${JSON.stringify(column)} is not numeric`);
  }
  return value;
}

function buildSeries(table: Table, spec: PanelSpec): Series[] {
  const rows = table.rows as unknown as Array<Record<string, unknown>>;
  if (rows.length === 0) {
    throw new Error(`${spec.input}: no data rows`);
  }
  const errColumn =
    spec.yerr === undefined ? defaultErrColumn(table, spec.y) : spec.yerr;
  const groups = new Map<string, Series>();
  for (const row of rows) {
    let key = "";
    let label: string | null = null;
    if (spec.groupBy !== undefined) {
      if (!(spec.groupBy in row)) {
        throw new Error(
          `${spec.input}: no column ${JSON.stringify(spec.groupBy)}`);
      }
      key = String(row[spec.groupBy]);
      label = `${spec.groupBy} = ${key}`;
    }
    let series = groups.get(key);
    if (series === undefined) {
      series = { label, xs: [], ys: [], errs: [] };
      groups.set(key, series);
    }
    series.xs.push(columnValue(row, spec.x, spec.input));
    series.ys.push(columnValue(row, spec.y, spec.input));
    series.errs.push(
      errColumn === null ? 0 : columnValue(row, errColumn, spec.input));
  }
  const out: Series[] = [];
  for (const series of groups.values()) {
    if (series.xs.length === 0) {
      throw new Error(`${spec.input}: empty group`);
    }
    const order = series.xs
      .map((x, i) => [x, i] as const)
      .sort((a, b) => a[0] - b[0])
      .map(([, i]) => i);
    out.push({
      label: series.label,
      xs: order.map((i) => series.xs[i] as number),
      ys: order.map((i) => series.ys[i] as number),
      errs: order.map((i) => series.errs[i] as number),
    });
  }
  return out;
}

function pickFitRow(spec: SigmoidOverlaySpec, baseDir: string): FitRow {
  const table = readTable(resolvePath(baseDir, spec.fit));
  if (table.kind !== "fit") {
    throw new Error(`${spec.fit}: sigmoid overlay needs a fit CSV`);
  }
  const rows = table.rows.filter(
    (row) =>
      (spec.model === undefined || row.model === spec.model) &&
      (spec.n === undefined || row.n === spec.n) &&
      (spec.theta === undefined || row.theta === spec.theta),
  );
  if (rows.length === 0) {
    throw new Error(`${spec.fit}: no fit row matches the overlay keys`);
  }
  if (rows.length > 1) {
    throw new Error(`${spec.fit}: overlay keys match ${rows.length} fit rows`);
  }
  return rows[0] as FitRow;
}

export function sigmoidOverlayPoints(fit: FitRow, steps = 100): Point[] {
  const points: Point[] = [];
  for (let i = 0; i <= steps; i++) {
    const sigma =
      fit.sigma_star + ((fit.sigma_star2 - fit.sigma_star) * i) / steps;
    points.push({
      x: sigma,
      y: softplusPrimitive(sigma, fit.A, fit.B, fit.sigma_c),
    });
  }
  return points;
}

export function resolvePath(baseDir: string, path: string): string {
  if (path.startsWith("/")) return path;
  return `${baseDir}/${path}`;
}

interface PanelRender {
  body: string;
  title: string;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

function axes(
  xScale: Scale,
  yScale: Scale,
  xlabel: string,
  ylabel: string,
): string {
  const [x0, x1] = xScale.range;
  const [y1, y0] = yScale.range; // svg y grows downward; range is [bottom, top]
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(x0)}" y="${fmt(y0)}" width="${fmt(x1 - x0)}"` +
      ` height="${fmt(y1 - y0)}" fill="none" stroke="#333333" stroke-width="1"/>`,
  );
  for (const t of ticks(xScale)) {
    const px = xScale.map(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(y1)}" x2="${fmt(px)}" y2="${fmt(y1 + 4)}"` +
        ` stroke="#333333" stroke-width="1"/>`,
      `<text x="${fmt(px)}" y="${fmt(y1 + 16)}" font-size="9"` +
        ` text-anchor="middle" fill="#333333">${esc(tickLabel(t))}</text>`,
    );
  }
  for (const t of ticks(yScale)) {
    const py = yScale.map(t);
    parts.push(
      `<line x1="${fmt(x0 - 4)}" y1="${fmt(py)}" x2="${fmt(x0)}" y2="${fmt(py)}"` +
        ` stroke="#333333" stroke-width="1"/>`,
      `<text x="${fmt(x0 - 7)}" y="${fmt(py + 3)}" font-size="9"` +
        ` text-anchor="end" fill="#333333">${esc(tickLabel(t))}</text>`,
    );
  }
  const cx = (x0 + x1) / 2;
  const cy = (y0 + y1) / 2;
  parts.push(
    `<text x="${fmt(cx)}" y="${fmt(y1 + 32)}" font-size="11"` +
      ` text-anchor="middle" fill="#111111">${esc(xlabel)}</text>`,
    `<text x="${fmt(x0 - 44)}" y="${fmt(cy)}" font-size="11" text-anchor="middle"` +
      ` transform="rotate(-90 ${fmt(x0 - 44)} ${fmt(cy)})" fill="#111111">` +
      `${esc(ylabel)}</text>`,
  );
  return parts.join("");
}

function renderPanel(spec: PanelSpec, baseDir: string): PanelRender {
  const table = readTable(resolvePath(baseDir, spec.input));
  const series = buildSeries(table, spec);
  const xKind = spec.xscale ?? "linear";
  const yKind = spec.yscale ?? "linear";

  const allX = series.flatMap((s) => s.xs);
  const allYLo = series.flatMap((s) => s.ys.map((y, i) => y - (s.errs[i] as number)));
  const allYHi = series.flatMap((s) => s.ys.map((y, i) => y + (s.errs[i] as number)));
  const [xLo, xHi] = extent(allX);
  let yLo = extent(allYLo)[0];
  let yHi = extent(allYHi)[1];
  if (yKind === "log") {
    // log axes drop nonpositive lower bounds to the smallest positive value
    const positive = series.flatMap((s) =>
      s.ys.filter((v) => v > 0));
    if (positive.length === 0) {
      throw new Error(`${spec.input}: no positive values for a log axis`);
    }
    yLo = Math.min(...positive);
    const lowered = allYLo.filter((v) => v > 0);
    if (lowered.length > 0) yLo = Math.min(yLo, ...lowered);
  }
  let overlayPoints: Point[] | null = null;
  let annotation: string | null = null;
  if (spec.overlay !== undefined && spec.overlay.kind === "sigmoid") {
    const fit = pickFitRow(spec.overlay, baseDir);
    overlayPoints = sigmoidOverlayPoints(fit);
    annotation = `sigma_c = ${fit.sigma_c.toFixed(3)}`;
    const oy = overlayPoints.map((p) => p.y);
    const [oLo, oHi] = extent(oy);
    if (yKind !== "log" || oLo > 0) yLo = Math.min(yLo, oLo);
    yHi = Math.max(yHi, oHi);
  }

  const xScale = makeScale(xKind, padded(xKind, xLo, xHi), [
    MARGIN.left,
    PANEL_W - MARGIN.right,
  ]);
  const yScale = makeScale(yKind, padded(yKind, yLo, yHi), [
    PANEL_H - MARGIN.bottom,
    MARGIN.top,
  ]);

  const parts: string[] = [];
  parts.push(
    axes(xScale, yScale, spec.xlabel ?? spec.x, spec.ylabel ?? spec.y));

  const laws: Array<{ law: PowerLaw; xs: number[]; color: string }> = [];
  series.forEach((s, index) => {
    const color = PALETTE[index % PALETTE.length] as string;
    const pts: Point[] = [];
    const bars: Array<{ x: number; y0: number; y1: number }> = [];
    s.xs.forEach((x, i) => {
      const y = s.ys[i] as number;
      if (yKind === "log" && y <= 0) return; // not representable on this axis
      const px = xScale.map(x);
      const py = yScale.map(y);
      pts.push({ x: px, y: py });
      const err = s.errs[i] as number;
      if (err > 0) {
        const lo = y - err;
        const hi = y + err;
        if (yKind !== "log" || lo > 0) {
          bars.push({ x: px, y0: yScale.map(hi), y1: yScale.map(lo) });
        }
      }
    });
    parts.push(errorBars(bars, color));
    parts.push(dataSeries(pts, color));
    if (spec.overlay !== undefined && spec.overlay.kind === "powerlaw") {
      const xs = s.xs.filter((_, i) => (s.ys[i] as number) > 0);
      const ys = s.ys.filter((y) => y > 0);
      laws.push({ law: fitPowerLaw(xs, ys), xs, color });
    }
  });

  for (const { law, xs } of laws) {
    const [lo, hi] = extent(xs);
    const steps = 60;
    const pts: Point[] = [];
    for (let i = 0; i <= steps; i++) {
      const x =
        xScale.kind === "log"
          ? lo * Math.pow(hi / lo, i / steps)
          : lo + ((hi - lo) * i) / steps;
      pts.push({ x: xScale.map(x), y: yScale.map(powerLawValue(law, x)) });
    }
    parts.push(dashedPath(pts));
  }
  if (laws.length === 1) {
    const first = laws[0] as { law: PowerLaw };
    annotation = `slope = ${first.law.exponent.toFixed(3)}`;
  }

  if (overlayPoints !== null) {
    const pts = overlayPoints
      .filter((p) => yKind !== "log" || p.y > 0)
      .map((p) => ({ x: xScale.map(p.x), y: yScale.map(p.y) }));
    parts.push(dashedPath(pts));
  }

  if (annotation !== null) {
    parts.push(
      `<text x="${fmt(MARGIN.left + 8)}" y="${fmt(MARGIN.top + 12)}"` +
        ` font-size="10" fill="#444444">${esc(annotation)}</text>`,
    );
  }

  const labeled = series.filter((s) => s.label !== null);
  labeled.forEach((s, index) => {
    const color = PALETTE[series.indexOf(s) % PALETTE.length] as string;
    const y = MARGIN.top + 12 + (annotation !== null ? 12 : 0) + index * 12;
    parts.push(
      `<text x="${fmt(MARGIN.left + 8)}" y="${fmt(y)}" font-size="9"` +
        ` fill="${color}">${esc(s.label as string)}</text>`,
    );
  });

  const title = spec.title ?? `${spec.y} vs ${spec.x}`;
  parts.push(
    `<text x="${fmt(PANEL_W / 2)}" y="16" font-size="12" text-anchor="middle"` +
      ` fill="#111111">${esc(title)}</text>`,
  );
  return { body: parts.join(""), title };
}

/** Render a figure spec into a complete SVG document string. */
export function renderFigure(spec: FigureSpec, baseDir = "."): string {
  if (spec.panels.length === 0) {
    throw new Error("figure needs at least one panel");
  }
  const count = spec.panels.length;
  const cols = count <= 2 ? count : Math.ceil(Math.sqrt(count));
  const rows = Math.ceil(count / cols);
  const parts: string[] = [];
  spec.panels.forEach((panel, index) => {
    const col = index % cols;
    const row = Math.floor(index / cols);
    const rendered = renderPanel(panel, baseDir);
    parts.push(
      `<g class="panel" transform="translate(${col * PANEL_W} ${row * PANEL_H})">` +
        rendered.body +
        `</g>`,
    );
  });
  return svgDocument(cols * PANEL_W, rows * PANEL_H, parts.join(""));
}
