/** Data-to-screen mapping with wheel-zoom support for the canvas panels. */

import type { Point } from "../types.js";

export interface Bounds {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export function boundsOf(coords: number[][][]): Bounds {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const block of coords) {
    for (const [x, y] of block) {
      if (x < xMin) xMin = x;
      if (x > xMax) xMax = x;
      if (y < yMin) yMin = y;
      if (y > yMax) yMax = y;
    }
  }
  if (xMin > xMax) return { xMin: 0, xMax: 1, yMin: 0, yMax: 1 };
  if (xMin === xMax) {
    xMin -= 0.5;
    xMax += 0.5;
  }
  if (yMin === yMax) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  return { xMin, xMax, yMin, yMax };
}

export class Viewport {
  width = 1;
  height = 1;
  private scale = 1;
  private centerX = 0;
  private centerY = 0;

  /** Fits `bounds` into width x height with a 5% margin; y grows upward. */
  fit(bounds: Bounds, width: number, height: number): void {
    this.width = width;
    this.height = height;
    const spanX = bounds.xMax - bounds.xMin;
    const spanY = bounds.yMax - bounds.yMin;
    this.scale = Math.min(width / spanX, height / spanY) / 1.1;
    this.centerX = (bounds.xMin + bounds.xMax) / 2;
    this.centerY = (bounds.yMin + bounds.yMax) / 2;
  }

  toScreen([x, y]: Point): Point {
    return [
      this.width / 2 + (x - this.centerX) * this.scale,
      this.height / 2 - (y - this.centerY) * this.scale,
    ];
  }

  fromScreen([sx, sy]: Point): Point {
    return [
      this.centerX + (sx - this.width / 2) / this.scale,
      this.centerY - (sy - this.height / 2) / this.scale,
    ];
  }

  /** Zooms by `factor` keeping the data point under the cursor fixed. */
  zoomAt(screen: Point, factor: number): void {
    const anchor = this.fromScreen(screen);
    this.scale *= factor;
    const moved = this.fromScreen(screen);
    this.centerX += anchor[0] - moved[0];
    this.centerY += anchor[1] - moved[1];
  }

  pixelsPerUnit(): number {
    return this.scale;
  }
}
