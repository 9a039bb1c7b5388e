/**
 * The two model curves drawn as overlays: the smoothed-hinge transition
 * model and log-log power laws.  Both mirror the fitting conventions of
 * the producing pipeline so overlay values agree with fit CSV columns.
 */

export interface PowerLaw {
  exponent: number;
  prefactor: number;
  dexponent: number;
}

/** (A/B) ln(1 + exp(B (sigma - sigmaC))), stable at both tails. */
export function softplusPrimitive(
  sigma: number,
  A: number,
  B: number,
  sigmaC: number,
): number {
  const t = B * (sigma - sigmaC);
  // logaddexp(0, t) without overflow
  const lse = Math.max(t, 0) + Math.log1p(Math.exp(-Math.abs(t)));
  return (A / B) * lse;
}

/** Ordinary least squares on (ln x, ln y); two points interpolate exactly. */
export function fitPowerLaw(xs: number[], ys: number[]): PowerLaw {
  if (xs.length !== ys.length) {
    throw new Error("power law fit needs matching x and y lengths");
  }
  if (xs.length < 2) {
    throw new Error("power law fit needs at least two points");
  }
  if (xs.some((v) => v <= 0) || ys.some((v) => v <= 0)) {
    throw new Error("power law fit needs positive inputs");
  }
  const lx = xs.map(Math.log);
  const ly = ys.map(Math.log);
  const n = lx.length;
  const mx = lx.reduce((a, b) => a + b, 0) / n;
  const my = ly.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    const dx = (lx[i] as number) - mx;
    sxx += dx * dx;
    sxy += dx * ((ly[i] as number) - my);
  }
  if (sxx === 0) {
    throw new Error("power law fit needs at least two distinct x values");
  }
  const exponent = sxy / sxx;
  const intercept = my - exponent * mx;
  let dexponent = NaN;
  if (n > 2) {
    let sse = 0;
    for (let i = 0; i < n; i++) {
      const r = (ly[i] as number) - (intercept + exponent * (lx[i] as number));
      sse += r * r;
    }
    dexponent = Math.sqrt(sse / (n - 2) / sxx);
  }
  return { exponent, prefactor: Math.exp(intercept), dexponent };
}

export function powerLawValue(law: PowerLaw, x: number): number {
  return law.prefactor * Math.pow(x, law.exponent);
}
