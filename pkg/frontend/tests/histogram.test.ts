import { describe, expect, it } from "vitest";

import { binIndex, buildHistogram, inInterval } from "../src/histogram.js";

describe("buildHistogram", () => {
  it("spreads values across uniform bins", () => {
    const histogram = buildHistogram([0, 1, 2, 3], 2);
    expect(histogram.min).toBe(0);
    expect(histogram.max).toBe(3);
    expect(histogram.counts).toEqual([2, 2]);
  });

  it("puts the maximum into the last (closed) bin", () => {
    const histogram = buildHistogram([0, 10], 5);
    expect(histogram.counts[4]).toBe(1);
    expect(histogram.counts[0]).toBe(1);
  });

  it("collapses identical values into bin zero", () => {
    const histogram = buildHistogram([7, 7, 7], 4);
    expect(histogram.counts).toEqual([3, 0, 0, 0]);
  });

  it("returns all-zero counts for empty input", () => {
    expect(buildHistogram([], 3).counts).toEqual([0, 0, 0]);
  });

  it("rejects non-positive bin counts", () => {
    expect(() => buildHistogram([1], 0)).toThrow(/bin/);
  });

  it("total count equals the number of samples", () => {
    const values = Array.from({ length: 57 }, (_, i) => Math.sin(i) * 3);
    const histogram = buildHistogram(values, 8);
    expect(histogram.counts.reduce((a, b) => a + b, 0)).toBe(57);
  });
});

describe("binIndex", () => {
  it("clamps values outside the range", () => {
    expect(binIndex(-1, 0, 10, 5)).toBe(0);
    expect(binIndex(11, 0, 10, 5)).toBe(4);
  });

  it("uses half-open bins internally", () => {
    expect(binIndex(2, 0, 10, 5)).toBe(1);
    expect(binIndex(1.999, 0, 10, 5)).toBe(0);
  });
});

describe("inInterval", () => {
  it("includes both endpoints", () => {
    expect(inInterval(0.1, [0.1, 0.5])).toBe(true);
    expect(inInterval(0.5, [0.1, 0.5])).toBe(true);
    expect(inInterval(0.6, [0.1, 0.5])).toBe(false);
    expect(inInterval(0.05, [0.1, 0.5])).toBe(false);
  });
});
