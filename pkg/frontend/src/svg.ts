/**
 * Small deterministic SVG scene builder: linear/log scales, tick
 * generation, data paths with error bars, dashed overlay paths.  No
 * timestamps or randomness, so identical inputs give identical bytes.
 */

export type ScaleKind = "linear" | "log";

export interface Scale {
  kind: ScaleKind;
  domain: [number, number];
  range: [number, number];
  map(value: number): number;
}

/** Fixed-precision coordinate text keeps output byte-stable. */
export function fmt(value: number): string {
  if (!Number.isFinite(value)) {
    throw new Error(`non-finite coordinate: ${value}`);
  }
  const text = value.toFixed(2);
  return text === "-0.00" ? "0.00" : text;
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function makeScale(
  kind: ScaleKind,
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  if (kind === "log" && (d0 <= 0 || d1 <= 0)) {
    throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
  }
  if (d0 === d1) {
    // degenerate domain: pin to the middle of the range
    return { kind, domain, range, map: () => (r0 + r1) / 2 };
  }
  const t0 = kind === "log" ? Math.log10(d0) : d0;
  const t1 = kind === "log" ? Math.log10(d1) : d1;
  return {
    kind,
    domain,
    range,
    map(value: number): number {
      const t = kind === "log" ? Math.log10(value) : value;
      return r0 + ((t - t0) / (t1 - t0)) * (r1 - r0);
    },
  };
}

/** Widen a data extent slightly so points sit inside the frame. */
export function padded(
  kind: ScaleKind,
  lo: number,
  hi: number,
): [number, number] {
  if (kind === "log") {
    const f = Math.pow(hi / lo, 0.06);
    return [lo / f, hi * f];
  }
  const pad = (hi - lo || Math.abs(hi) || 1) * 0.06;
  return [lo - pad, hi + pad];
}

export function ticks(scale: Scale, target = 5): number[] {
  const [d0, d1] = scale.domain;
  if (d0 === d1) return [d0];
  if (scale.kind === "log") {
    const lo = Math.ceil(Math.log10(d0) - 1e-9);
    const hi = Math.floor(Math.log10(d1) + 1e-9);
    const out: number[] = [];
    if (hi >= lo) {
      const stride = Math.max(1, Math.ceil((hi - lo + 1) / (target + 1)));
      for (let e = lo; e <= hi; e += stride) out.push(Math.pow(10, e));
    }
    if (out.length >= 2) return out;
    // under a decade of span: fall back to linear ticks inside the domain
    return linearTicks(d0, d1, target);
  }
  return linearTicks(d0, d1, target);
}

function linearTicks(d0: number, d1: number, target: number): number[] {
  const span = d1 - d0;
  const rawStep = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (mag * m >= rawStep) {
      step = mag * m;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(d0 / step) * step; v <= d1 + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function tickLabel(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) {
    const e = Math.floor(Math.log10(abs) + 1e-9);
    const mant = value / Math.pow(10, e);
    const m = Math.abs(mant - 1) < 1e-9 ? "" : `${Number(mant.toFixed(2))}·`;
    return `${m}10^${e}`;
  }
  return `${Number(abs.toFixed(4)) * Math.sign(value)}`;
}

export interface Point {
  x: number;
  y: number;
}

export function pathFrom(points: Point[]): string {
  return points
    .map((p, i) => `${i === 0 ? "M" : "L"}${fmt(p.x)} ${fmt(p.y)}`)
    .join("");
}

export const PALETTE = ["#1f5fa8", "#c4452c", "#2e8540", "#7b4fa6", "#b07d1e"];

export function dataSeries(
  points: Point[],
  color: string,
  marker = true,
): string {
  const parts: string[] = [];
  if (points.length > 1) {
    parts.push(
      `<path d="${pathFrom(points)}" fill="none" stroke="${color}" stroke-width="1.3"/>`,
    );
  }
  if (marker) {
    for (const p of points) {
      parts.push(
        `<circle cx="${fmt(p.x)}" cy="${fmt(p.y)}" r="2.4" fill="${color}"/>`,
      );
    }
  }
  return parts.join("");
}

export function errorBars(
  bars: Array<{ x: number; y0: number; y1: number }>,
  color: string,
): string {
  const cap = 2.6;
  return bars
    .map(
      (b) =>
        `<path d="M${fmt(b.x)} ${fmt(b.y0)}L${fmt(b.x)} ${fmt(b.y1)}` +
        `M${fmt(b.x - cap)} ${fmt(b.y0)}L${fmt(b.x + cap)} ${fmt(b.y0)}` +
        `M${fmt(b.x - cap)} ${fmt(b.y1)}L${fmt(b.x + cap)} ${fmt(b.y1)}"` +
        ` fill="none" stroke="${color}" stroke-width="0.8"/>`,
    )
    .join("");
}

export function dashedPath(points: Point[], color = "#444444"): string {
  return (
    `<path class="overlay" d="${pathFrom(points)}" fill="none"` +
    ` stroke="${color}" stroke-width="1.2" stroke-dasharray="6 4"/>`
  );
}

export function svgDocument(
  width: number,
  height: number,
  body: string,
): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"` +
    ` viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>` +
    body +
    `</svg>\n`
  );
}
