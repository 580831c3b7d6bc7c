/** Canvas scatterplot panel for one projection space. */

import type { ArtifactJson, Point } from "../types.js";
import type { Space, ViewState } from "../state.js";
import {
  clusterLabelMarks,
  neighborLink,
  outlierMarks,
  rankingArrows,
  scatterMarks,
  type ScatterMark,
} from "../marks.js";
import { DENSITY_GRAY, HOVER_COLOR, SELECTION_COLOR } from "../scales.js";
import { drawField, fieldToCanvas } from "./density.js";
import { boundsOf, Viewport } from "./viewport.js";

const ORANGE_RGB = [255, 140, 0] as const;
const HIT_RADIUS_PX = 8;

export interface ScatterCallbacks {
  onHover(id: number | null, clientX: number, clientY: number): void;
  onLasso(polygon: Point[]): void;
  onLassoCleared(): void;
}

export class ScatterPanel {
  private readonly ctx: CanvasRenderingContext2D;
  private readonly viewport = new Viewport();
  private marks: ScatterMark[] = [];
  private dragPath: Point[] = [];
  private dragging = false;
  private baseImage: HTMLCanvasElement | null = null;
  private patchImage: HTMLCanvasElement | null = null;
  private patchSource: unknown = null;
  private artifact: ArtifactJson | null = null;
  private state: ViewState | null = null;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly space: Space,
    private readonly callbacks: ScatterCallbacks,
  ) {
    this.ctx = canvas.getContext("2d")!;
    canvas.addEventListener("pointerdown", (e) => this.onPointerDown(e));
    canvas.addEventListener("pointermove", (e) => this.onPointerMove(e));
    canvas.addEventListener("pointerup", (e) => this.onPointerUp(e));
    canvas.addEventListener("pointerleave", () => this.callbacks.onHover(null, 0, 0));
    canvas.addEventListener("wheel", (e) => this.onWheel(e), { passive: false });
  }

  setArtifact(artifact: ArtifactJson): void {
    this.artifact = artifact;
    this.baseImage =
      this.space === "objective" && artifact.density
        ? fieldToCanvas(artifact.density, DENSITY_GRAY, 220)
        : null;
    this.patchImage = null;
    this.patchSource = null;
    const blocks = [this.space === "decision" ? artifact.layout.decision : artifact.layout.objective];
    if (this.space === "objective" && artifact.layout.reference.length > 0) {
      blocks.push(artifact.layout.reference);
    }
    this.viewport.fit(boundsOf(blocks), this.canvas.width, this.canvas.height);
  }

  render(state: ViewState): void {
    if (!this.artifact) return;
    this.state = state;
    const artifact = this.artifact;
    const ctx = this.ctx;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    if (this.space === "objective") this.drawDensityLayers(artifact, state);
    this.drawOutliers(artifact, state);
    this.drawArrows(artifact, state);
    this.drawNeighborLink(artifact, state);
    this.marks = scatterMarks(artifact, state, this.space);
    for (const mark of this.marks) this.drawMark(mark);
    this.drawClusterLabels(artifact, state);
    this.drawDragPath();
  }

  private drawDensityLayers(artifact: ArtifactJson, state: ViewState): void {
    if (!artifact.density) {
      this.ctx.fillStyle = "#888";
      this.ctx.font = "12px sans-serif";
      this.ctx.fillText("no reference set: density map unavailable", 10, 18);
      return;
    }
    if (this.baseImage) drawField(this.ctx, this.baseImage, artifact.density, this.viewport);
    const patch = state.lasso?.patch ?? null;
    if (patch) {
      if (this.patchSource !== patch) {
        this.patchImage = fieldToCanvas(patch, ORANGE_RGB, 235);
        this.patchSource = patch;
      }
      drawField(this.ctx, this.patchImage!, patch, this.viewport);
    }
  }

  private drawOutliers(artifact: ArtifactJson, state: ViewState): void {
    if (this.space !== "objective") return;
    for (const mark of outlierMarks(artifact, state)) {
      const [sx, sy] = this.viewport.toScreen([mark.x, mark.y]);
      this.ctx.beginPath();
      this.ctx.arc(sx, sy, mark.radius, 0, Math.PI * 2);
      this.ctx.fillStyle = mark.fill;
      this.ctx.fill();
      if (mark.selected) {
        this.ctx.strokeStyle = SELECTION_COLOR;
        this.ctx.stroke();
      }
    }
  }

  private drawArrows(artifact: ArtifactJson, state: ViewState): void {
    const segments = rankingArrows(artifact, state, this.space);
    this.ctx.strokeStyle = "#444";
    this.ctx.fillStyle = "#444";
    this.ctx.lineWidth = 1.2;
    for (const segment of segments) {
      const from = this.viewport.toScreen(segment.from);
      const to = this.viewport.toScreen(segment.to);
      this.ctx.beginPath();
      this.ctx.moveTo(from[0], from[1]);
      this.ctx.lineTo(to[0], to[1]);
      this.ctx.stroke();
      const angle = Math.atan2(to[1] - from[1], to[0] - from[0]);
      this.ctx.beginPath();
      this.ctx.moveTo(to[0], to[1]);
      this.ctx.lineTo(to[0] - 7 * Math.cos(angle - 0.4), to[1] - 7 * Math.sin(angle - 0.4));
      this.ctx.lineTo(to[0] - 7 * Math.cos(angle + 0.4), to[1] - 7 * Math.sin(angle + 0.4));
      this.ctx.closePath();
      this.ctx.fill();
    }
  }

  private drawNeighborLink(artifact: ArtifactJson, state: ViewState): void {
    if (this.space !== "objective") return;
    const link = neighborLink(artifact, state);
    if (!link) return;
    const from = this.viewport.toScreen(link.from);
    const to = this.viewport.toScreen(link.to);
    this.ctx.save();
    this.ctx.strokeStyle = "#111";
    this.ctx.setLineDash([5, 4]);
    this.ctx.beginPath();
    this.ctx.moveTo(from[0], from[1]);
    this.ctx.lineTo(to[0], to[1]);
    this.ctx.stroke();
    this.ctx.restore();
  }

  private drawMark(mark: ScatterMark): void {
    const ctx = this.ctx;
    const [sx, sy] = this.viewport.toScreen([mark.x, mark.y]);
    const r = mark.hovered ? mark.radius + 1.5 : mark.radius;
    const fill = mark.hovered ? HOVER_COLOR : mark.fill;
    if (mark.selected) {
      ctx.beginPath();
      ctx.arc(sx, sy, r + 2.5, 0, Math.PI * 2);
      ctx.strokeStyle = SELECTION_COLOR;
      ctx.lineWidth = 2;
      ctx.stroke();
    }
    if (mark.shape === "cross") {
      ctx.strokeStyle = fill;
      ctx.lineWidth = mark.stroked ? 2.4 : 1.6;
      ctx.beginPath();
      ctx.moveTo(sx - r, sy - r);
      ctx.lineTo(sx + r, sy + r);
      ctx.moveTo(sx - r, sy + r);
      ctx.lineTo(sx + r, sy - r);
      ctx.stroke();
      return;
    }
    ctx.beginPath();
    ctx.arc(sx, sy, r, 0, Math.PI * 2);
    ctx.fillStyle = fill;
    ctx.fill();
    if (mark.stroked) {
      ctx.strokeStyle = "#111";
      ctx.lineWidth = 1.5;
      ctx.stroke();
    }
  }

  private drawClusterLabels(artifact: ArtifactJson, state: ViewState): void {
    const labels = clusterLabelMarks(artifact, state, this.space);
    this.ctx.font = "bold 12px sans-serif";
    for (const mark of labels) {
      const [sx, sy] = this.viewport.toScreen([mark.x, mark.y]);
      this.ctx.fillStyle = mark.color;
      this.ctx.fillText(String(mark.label), sx + 6, sy - 6);
    }
  }

  private drawDragPath(): void {
    if (this.dragPath.length < 2) return;
    this.ctx.save();
    this.ctx.strokeStyle = SELECTION_COLOR;
    this.ctx.setLineDash([4, 3]);
    this.ctx.beginPath();
    const first = this.viewport.toScreen(this.dragPath[0]);
    this.ctx.moveTo(first[0], first[1]);
    for (const p of this.dragPath.slice(1)) {
      const [sx, sy] = this.viewport.toScreen(p);
      this.ctx.lineTo(sx, sy);
    }
    this.ctx.stroke();
    this.ctx.restore();
  }

  private screenPoint(e: PointerEvent | WheelEvent): Point {
    const rect = this.canvas.getBoundingClientRect();
    return [e.clientX - rect.left, e.clientY - rect.top];
  }

  private onPointerDown(e: PointerEvent): void {
    this.canvas.setPointerCapture(e.pointerId);
    this.dragging = true;
    this.dragPath = [this.viewport.fromScreen(this.screenPoint(e))];
  }

  private onPointerMove(e: PointerEvent): void {
    const screen = this.screenPoint(e);
    if (this.dragging) {
      this.dragPath.push(this.viewport.fromScreen(screen));
      if (this.state) this.render(this.state);
      return;
    }
    const hit = this.hitTest(screen);
    this.callbacks.onHover(hit, e.clientX, e.clientY);
  }

  private onPointerUp(e: PointerEvent): void {
    this.canvas.releasePointerCapture(e.pointerId);
    this.dragging = false;
    const path = this.dragPath;
    this.dragPath = [];
    if (path.length >= 3 && this.pathSpansPixels(path)) {
      this.callbacks.onLasso(path);
    } else {
      this.callbacks.onLassoCleared();
      if (this.state) this.render(this.state);
    }
  }

  private pathSpansPixels(path: Point[]): boolean {
    const screens = path.map((p) => this.viewport.toScreen(p));
    const xs = screens.map((p) => p[0]);
    const ys = screens.map((p) => p[1]);
    return (
      Math.max(...xs) - Math.min(...xs) > 6 || Math.max(...ys) - Math.min(...ys) > 6
    );
  }

  private onWheel(e: WheelEvent): void {
    e.preventDefault();
    const factor = e.deltaY < 0 ? 1.2 : 1 / 1.2;
    this.viewport.zoomAt(this.screenPoint(e), factor);
    if (this.state) this.render(this.state);
  }

  private hitTest(screen: Point): number | null {
    let best: number | null = null;
    let bestDist = HIT_RADIUS_PX;
    for (const mark of this.marks) {
      const [sx, sy] = this.viewport.toScreen([mark.x, mark.y]);
      const dist = Math.hypot(sx - screen[0], sy - screen[1]);
      if (dist < bestDist) {
        bestDist = dist;
        best = mark.id;
      }
    }
    return best;
  }
}
