/** Axis scales and tick generation: pure, deterministic helpers. */

export interface Scale {
  /** data -> pixel */
  map(v: number): number;
  ticks(): number[];
  domain: [number, number];
  log: boolean;
}

export function finiteExtent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) throw new Error("no finite values to scale");
  if (lo === hi) {
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.5;
    return [lo - pad, hi + pad];
  }
  return [lo, hi];
}

/** Round-numbered step covering the span with 4..8 ticks. */
function niceStep(span: number): number {
  const raw = span / 5;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = (r1 - r0) / (d1 - d0);
  return {
    map: (v) => r0 + (v - d0) * k,
    domain,
    log: false,
    ticks: () => {
      const step = niceStep(d1 - d0);
      const out: number[] = [];
      for (let t = Math.ceil(d0 / step) * step; t <= d1 + 1e-9 * step; t += step) {
        out.push(Math.abs(t) < 1e-12 * step ? 0 : t);
      }
      return out;
    },
  };
}

export function logScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale needs positive bounds");
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const [r0, r1] = range;
  const k = (r1 - r0) / (l1 - l0);
  return {
    map: (v) => r0 + (Math.log10(v) - l0) * k,
    domain,
    log: true,
    ticks: () => {
      const out: number[] = [];
      const decadeSpan = Math.ceil(l1) - Math.floor(l0);
      const stride = decadeSpan > 8 ? Math.ceil(decadeSpan / 8) : 1;
      for (let e = Math.ceil(l0); e <= Math.floor(l1); e += stride) {
        out.push(Number(`1e${e}`)); // exact decimal decade, not pow round-off
      }
      return out.length >= 2 ? out : [d0, d1];
    },
  };
}

/** Deterministic short form for tick labels and path coordinates. */
export function fmt(v: number, digits = 6): string {
  if (v === 0) return "0";
  if (!Number.isFinite(v)) return "nan";
  const a = Math.abs(v);
  const s =
    a >= 1e4 || a < 1e-3 ? v.toExponential(2) : v.toPrecision(digits);
  return s
    .replace(/(\.\d*?)0+(?=$|e)/, "$1")
    .replace(/\.(?=$|e)/, "")
    .replace("e+", "e");
}
