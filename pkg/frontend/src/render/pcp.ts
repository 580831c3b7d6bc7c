/** SVG parallel-coordinates panel with axis histograms, brushing, and reorder. */

import type { ArtifactJson } from "../types.js";
import type { ViewState } from "../state.js";
import { pcpModel, type PcpAxis } from "../marks.js";
import { HOVER_COLOR, linearScale, type LinearScale } from "../scales.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const MARGIN = { top: 34, bottom: 16, left: 46, right: 60 };
const HISTOGRAM_WIDTH = 18;

export interface PcpCallbacks {
  onHover(id: number | null): void;
  onBrush(axis: number, interval: [number, number] | null): void;
  onReorder(fromPosition: number, toPosition: number): void;
  onRankingClick(axis: number): void;
}

interface DragState {
  kind: "brush" | "reorder";
  position: number;
  axis: number;
  startY: number;
  currentY: number;
  startX: number;
  currentX: number;
}

export class PcpPanel {
  private drag: DragState | null = null;
  private artifact: ArtifactJson | null = null;
  private state: ViewState | null = null;

  constructor(
    private readonly svg: SVGSVGElement,
    private readonly callbacks: PcpCallbacks,
  ) {
    svg.addEventListener("pointermove", (e) => this.onPointerMove(e));
    svg.addEventListener("pointerup", (e) => this.onPointerUp(e));
    svg.addEventListener("pointerleave", () => {
      this.drag = null;
    });
  }

  setArtifact(artifact: ArtifactJson): void {
    this.artifact = artifact;
  }

  render(state: ViewState): void {
    if (!this.artifact) return;
    this.state = state;
    const artifact = this.artifact;
    const model = pcpModel(artifact, state);
    const width = this.svg.clientWidth || Number(this.svg.getAttribute("width")) || 900;
    const height = this.svg.clientHeight || Number(this.svg.getAttribute("height")) || 340;
    this.svg.replaceChildren();
    const positions = this.axisPositions(model.axes.length, width);
    const scales = model.axes.map((axis) =>
      linearScale(axis.domain, [height - MARGIN.bottom, MARGIN.top]),
    );

    for (const edge of model.edges) {
      if (edge.highlighted || edge.selected) continue;
      this.appendEdge(positions, scales, edge.values, {
        stroke: edge.emphasized ? "#222" : "#b8bdc4",
        width: edge.emphasized ? 1.8 : 0.8,
        opacity: edge.emphasized ? 0.95 : 0.5,
        id: edge.id,
      });
    }
    for (const ref of model.referenceEdges) {
      this.appendReferenceEdge(positions, scales, ref.values, ref.color);
    }
    for (const edge of model.edges) {
      if (!edge.selected || edge.highlighted) continue;
      this.appendEdge(positions, scales, edge.values, {
        stroke: "#ff8c00",
        width: 1.8,
        opacity: 0.95,
        id: edge.id,
      });
    }
    for (const edge of model.edges) {
      if (!edge.highlighted) continue;
      this.appendEdge(positions, scales, edge.values, {
        stroke: HOVER_COLOR,
        width: 2.4,
        opacity: 1,
        id: edge.id,
        cssClass: "pcp-edge-highlighted",
      });
    }
    model.axes.forEach((axis, position) => {
      this.appendAxis(axis, position, positions[position], scales[position], height, state);
    });
    this.appendDragGhost(positions, height);
  }

  private axisPositions(count: number, width: number): number[] {
    if (count === 1) return [width / 2];
    const step = (width - MARGIN.left - MARGIN.right) / (count - 1);
    return Array.from({ length: count }, (_, i) => MARGIN.left + i * step);
  }

  private appendEdge(
    positions: number[],
    scales: LinearScale[],
    values: number[],
    style: { stroke: string; width: number; opacity: number; id: number; cssClass?: string },
  ): void {
    const path = document.createElementNS(SVG_NS, "polyline");
    const points = values
      .map((v, i) => `${positions[i]},${scales[i].apply(v)}`)
      .join(" ");
    path.setAttribute("points", points);
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", style.stroke);
    path.setAttribute("stroke-width", String(style.width));
    path.setAttribute("opacity", String(style.opacity));
    if (style.cssClass) path.setAttribute("class", style.cssClass);
    path.addEventListener("pointerenter", () => this.callbacks.onHover(style.id));
    path.addEventListener("pointerleave", () => this.callbacks.onHover(null));
    this.svg.append(path);
  }

  private appendReferenceEdge(
    positions: number[],
    scales: LinearScale[],
    values: (number | null)[],
    color: string,
  ): void {
    let run: string[] = [];
    const flush = () => {
      if (run.length >= 2) {
        const path = document.createElementNS(SVG_NS, "polyline");
        path.setAttribute("points", run.join(" "));
        path.setAttribute("fill", "none");
        path.setAttribute("stroke", color);
        path.setAttribute("stroke-width", "1.6");
        path.setAttribute("opacity", "0.9");
        path.setAttribute("class", "pcp-reference-edge");
        path.setAttribute("pointer-events", "none");
        this.svg.append(path);
      }
      run = [];
    };
    values.forEach((v, i) => {
      if (v === null) {
        flush();
      } else {
        run.push(`${positions[i]},${scales[i].apply(v)}`);
      }
    });
    flush();
  }

  private appendAxis(
    axis: PcpAxis,
    position: number,
    x: number,
    scale: LinearScale,
    height: number,
    state: ViewState,
  ): void {
    const group = document.createElementNS(SVG_NS, "g");
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(x));
    line.setAttribute("x2", String(x));
    line.setAttribute("y1", String(MARGIN.top));
    line.setAttribute("y2", String(height - MARGIN.bottom));
    line.setAttribute("stroke", "#333");
    group.append(line);

    const histogram = axis.histogram;
    const peak = Math.max(1, ...histogram.counts);
    const binHeight = (height - MARGIN.top - MARGIN.bottom) / histogram.counts.length;
    histogram.counts.forEach((count, bin) => {
      if (count === 0) return;
      const bar = document.createElementNS(SVG_NS, "rect");
      bar.setAttribute("x", String(x + 2));
      bar.setAttribute("y", String(height - MARGIN.bottom - (bin + 1) * binHeight));
      bar.setAttribute("width", String((count / peak) * HISTOGRAM_WIDTH));
      bar.setAttribute("height", String(Math.max(binHeight - 1, 1)));
      bar.setAttribute("fill", "#8ea6c8");
      bar.setAttribute("opacity", "0.65");
      bar.setAttribute("pointer-events", "none");
      group.append(bar);
    });

    const brush = state.axisBrushes[axis.axis];
    if (brush) {
      const y1 = scale.apply(brush[0]);
      const y2 = scale.apply(brush[1]);
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(x - 5));
      rect.setAttribute("width", "10");
      rect.setAttribute("y", String(Math.min(y1, y2)));
      rect.setAttribute("height", String(Math.abs(y1 - y2)));
      rect.setAttribute("fill", "#3b6fb6");
      rect.setAttribute("opacity", "0.35");
      rect.setAttribute("pointer-events", "none");
      group.append(rect);
    }

    const hitStrip = document.createElementNS(SVG_NS, "rect");
    hitStrip.setAttribute("x", String(x - 6));
    hitStrip.setAttribute("width", "12");
    hitStrip.setAttribute("y", String(MARGIN.top));
    hitStrip.setAttribute("height", String(height - MARGIN.top - MARGIN.bottom));
    hitStrip.setAttribute("fill", "transparent");
    hitStrip.style.cursor = "crosshair";
    hitStrip.addEventListener("pointerdown", (e) => {
      e.preventDefault();
      this.drag = {
        kind: "brush",
        position,
        axis: axis.axis,
        startY: this.localY(e),
        currentY: this.localY(e),
        startX: this.localX(e),
        currentX: this.localX(e),
      };
    });
    group.append(hitStrip);

    const title = document.createElementNS(SVG_NS, "text");
    title.setAttribute("x", String(x));
    title.setAttribute("y", String(MARGIN.top - 18));
    title.setAttribute("text-anchor", "middle");
    title.setAttribute("class", "pcp-axis-title");
    title.textContent = axis.name;
    title.style.cursor = "grab";
    title.addEventListener("pointerdown", (e) => {
      e.preventDefault();
      this.drag = {
        kind: "reorder",
        position,
        axis: axis.axis,
        startY: this.localY(e),
        currentY: this.localY(e),
        startX: this.localX(e),
        currentX: this.localX(e),
      };
    });
    group.append(title);

    const arrow = document.createElementNS(SVG_NS, "text");
    arrow.setAttribute("x", String(x));
    arrow.setAttribute("y", String(MARGIN.top - 5));
    arrow.setAttribute("text-anchor", "middle");
    arrow.setAttribute("class", "pcp-ranking-toggle");
    const active =
      state.ranking !== null && state.ranking.axis === axis.axis && state.ranking.mode === "asc";
    arrow.textContent = active ? "▲" : "△";
    arrow.style.cursor = "pointer";
    arrow.addEventListener("pointerdown", (e) => {
      e.stopPropagation();
      e.preventDefault();
      this.callbacks.onRankingClick(axis.axis);
    });
    group.append(arrow);

    this.svg.append(group);
  }

  private appendDragGhost(positions: number[], height: number): void {
    if (!this.drag || this.drag.kind !== "reorder") return;
    if (Math.abs(this.drag.currentX - this.drag.startX) < 3) return;
    const ghost = document.createElementNS(SVG_NS, "line");
    ghost.setAttribute("x1", String(this.drag.currentX));
    ghost.setAttribute("x2", String(this.drag.currentX));
    ghost.setAttribute("y1", String(MARGIN.top));
    ghost.setAttribute("y2", String(height - MARGIN.bottom));
    ghost.setAttribute("stroke", "#888");
    ghost.setAttribute("stroke-dasharray", "4 3");
    this.svg.append(ghost);
  }

  private localX(e: PointerEvent): number {
    return e.clientX - this.svg.getBoundingClientRect().left;
  }

  private localY(e: PointerEvent): number {
    return e.clientY - this.svg.getBoundingClientRect().top;
  }

  private onPointerMove(e: PointerEvent): void {
    if (!this.drag) return;
    this.drag.currentY = this.localY(e);
    this.drag.currentX = this.localX(e);
    if (this.state) this.render(this.state);
  }

  private onPointerUp(e: PointerEvent): void {
    const drag = this.drag;
    this.drag = null;
    if (!drag || !this.artifact || !this.state) return;
    const model = pcpModel(this.artifact, this.state);
    const width = this.svg.clientWidth || Number(this.svg.getAttribute("width")) || 900;
    const height = this.svg.clientHeight || Number(this.svg.getAttribute("height")) || 340;
    if (drag.kind === "brush") {
      const endY = this.localY(e);
      if (Math.abs(endY - drag.startY) < 3) {
        this.callbacks.onBrush(drag.axis, null);
        return;
      }
      const axisIndex = this.state.axisOrder.indexOf(drag.axis);
      const scale = linearScale(model.axes[axisIndex].domain, [
        height - MARGIN.bottom,
        MARGIN.top,
      ]);
      const a = scale.invert(drag.startY);
      const b = scale.invert(endY);
      this.callbacks.onBrush(drag.axis, [Math.min(a, b), Math.max(a, b)]);
      return;
    }
    const positions = this.axisPositions(model.axes.length, width);
    const endX = this.localX(e);
    let target = 0;
    let bestDist = Infinity;
    positions.forEach((x, i) => {
      const dist = Math.abs(x - endX);
      if (dist < bestDist) {
        bestDist = dist;
        target = i;
      }
    });
    if (target !== drag.position) this.callbacks.onReorder(drag.position, target);
    else if (this.state) this.render(this.state);
  }
}
