/** Color and coordinate scales shared across the views. */

export const NOISE_COLOR = "#9aa0a6";
export const HOVER_COLOR = "#d62728";
export const SELECTION_COLOR = "#ff8c00";
export const DENSITY_GRAY = [158, 158, 158] as const;

/** Ten categorical hues; cluster labels cycle through them. */
export const CATEGORICAL_PALETTE = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
  "#17becf",
];

/** Noise points (label -1) are gray; real labels cycle the palette. */
export function clusterColor(label: number): string {
  if (label < 0) return NOISE_COLOR;
  return CATEGORICAL_PALETTE[label % CATEGORICAL_PALETTE.length];
}

const GREEN_DARK = [0, 68, 27] as const;
const GREEN_PALE = [229, 245, 224] as const;

/** Sequential green for a normalized value in [0, 1]; smaller is darker. */
export function sequentialGreen(t: number): string {
  const clamped = Math.min(Math.max(t, 0), 1);
  const channel = (i: number) =>
    Math.round(GREEN_DARK[i] + (GREEN_PALE[i] - GREEN_DARK[i]) * clamped);
  return `rgb(${channel(0)}, ${channel(1)}, ${channel(2)})`;
}

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: Iterable<number>): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (min > max) return { min: 0, max: 1 };
  return { min, max };
}

/** Maps `value` into [0, 1] over the extent; constant extents map to 0.5. */
export function normalized(value: number, extent: Extent): number {
  const span = extent.max - extent.min;
  if (span <= 0) return 0.5;
  return (value - extent.min) / span;
}

export interface LinearScale {
  domain: Extent;
  range: [number, number];
  apply(value: number): number;
  invert(position: number): number;
}

export function linearScale(domain: Extent, range: [number, number]): LinearScale {
  const span = domain.max - domain.min;
  const width = range[1] - range[0];
  return {
    domain,
    range,
    apply(value: number): number {
      if (span <= 0) return (range[0] + range[1]) / 2;
      return range[0] + ((value - domain.min) / span) * width;
    },
    invert(position: number): number {
      if (width === 0) return domain.min;
      return domain.min + ((position - range[0]) / width) * span;
    },
  };
}

/** Formats tooltip and table numbers to four significant digits. */
export function formatValue(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  return value.toPrecision(4);
}
