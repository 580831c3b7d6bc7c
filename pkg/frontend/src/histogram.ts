/** Uniform-width binning shared by the distance histogram and PCP axis strips. */

export interface Histogram {
  min: number;
  max: number;
  counts: number[];
}

/** Returns the bin index of `value`; bins are half-open, the last is closed. */
export function binIndex(value: number, min: number, max: number, bins: number): number {
  if (max <= min) return 0;
  const raw = Math.floor(((value - min) / (max - min)) * bins);
  return Math.min(Math.max(raw, 0), bins - 1);
}

export function buildHistogram(values: number[], bins: number): Histogram {
  if (!Number.isInteger(bins) || bins < 1) throw new Error(`bad bin count ${bins}`);
  const counts = new Array<number>(bins).fill(0);
  if (values.length === 0) return { min: 0, max: 0, counts };
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  for (const v of values) counts[binIndex(v, min, max, bins)] += 1;
  return { min, max, counts };
}

/** Membership of `value` in a brushed interval; both endpoints inclusive. */
export function inInterval(value: number, interval: [number, number]): boolean {
  return value >= interval[0] && value <= interval[1];
}
