/** Rasterization of density fields into canvas image layers. */

import type { DensityFieldJson } from "../types.js";
import type { Viewport } from "./viewport.js";

/** RGBA pixels in canvas row order (top row first); alpha scales with density.
 *
 * Field rows are stored bottom-up (row 0 at the y_min edge), so rows are
 * flipped here. Alpha is value / max(value) times `maxAlpha`.
 */
export function rasterRgba(
  field: DensityFieldJson,
  rgb: readonly [number, number, number],
  maxAlpha = 255,
): Uint8ClampedArray<ArrayBuffer> {
  const { w, h, values } = field;
  let peak = 0;
  for (const v of values) if (v > peak) peak = v;
  const pixels = new Uint8ClampedArray(w * h * 4);
  for (let row = 0; row < h; row++) {
    const sourceRow = h - 1 - row;
    for (let col = 0; col < w; col++) {
      const value = values[sourceRow * w + col];
      const base = (row * w + col) * 4;
      pixels[base] = rgb[0];
      pixels[base + 1] = rgb[1];
      pixels[base + 2] = rgb[2];
      pixels[base + 3] = peak > 0 ? Math.round((value / peak) * maxAlpha) : 0;
    }
  }
  return pixels;
}

export function fieldToCanvas(
  field: DensityFieldJson,
  rgb: readonly [number, number, number],
  maxAlpha: number,
): HTMLCanvasElement {
  const canvas = document.createElement("canvas");
  canvas.width = field.w;
  canvas.height = field.h;
  const ctx = canvas.getContext("2d")!;
  ctx.putImageData(new ImageData(rasterRgba(field, rgb, maxAlpha), field.w, field.h), 0, 0);
  return canvas;
}

/** Draws the field image aligned to its data-space bounds. */
export function drawField(
  ctx: CanvasRenderingContext2D,
  image: HTMLCanvasElement,
  field: DensityFieldJson,
  viewport: Viewport,
): void {
  const [xMin, yMin, xMax, yMax] = field.bounds;
  const topLeft = viewport.toScreen([xMin, yMax]);
  const bottomRight = viewport.toScreen([xMax, yMin]);
  ctx.imageSmoothingEnabled = true;
  ctx.drawImage(
    image,
    topLeft[0],
    topLeft[1],
    bottomRight[0] - topLeft[0],
    bottomRight[1] - topLeft[1],
  );
}
