/** Planar helpers for lasso hit-testing on solution points. */

import type { Point } from "./types.js";

/** Even-odd ray-casting test; points on an edge may land either way. */
export function pointInPolygon(point: Point, polygon: Point[]): boolean {
  if (polygon.length < 3) return false;
  const [x, y] = point;
  let inside = false;
  for (let i = 0, j = polygon.length - 1; i < polygon.length; j = i++) {
    const [xi, yi] = polygon[i];
    const [xj, yj] = polygon[j];
    if (yi > y !== yj > y && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

export function containedIndices(coords: number[][], polygon: Point[]): number[] {
  const hits: number[] = [];
  coords.forEach((xy, i) => {
    if (pointInPolygon([xy[0], xy[1]], polygon)) hits.push(i);
  });
  return hits;
}
