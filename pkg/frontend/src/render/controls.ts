/** Control panel: dataset picker, color mode, toggles, distance histogram. */

import type { ArtifactJson, DatasetSummary } from "../types.js";
import type { ColorMode, DistanceMode, ViewState } from "../state.js";
import { distanceHistogram } from "../marks.js";
import { linearScale } from "../scales.js";

export interface ControlCallbacks {
  onDataset(id: string): void;
  onColorMode(mode: ColorMode): void;
  onToggle(key: "neighborLinks" | "dominanceGlyphs" | "clusterLabels", on: boolean): void;
  onHistogramMode(mode: DistanceMode): void;
  onHistogramBins(bins: number): void;
  onHistogramBrush(interval: [number, number] | null): void;
}

const HIST_MARGIN = { left: 8, right: 8, top: 6, bottom: 14 };

export class ControlPanel {
  private readonly datasetSelect: HTMLSelectElement;
  private readonly colorSelect: HTMLSelectElement;
  private readonly histogramModeSelect: HTMLSelectElement;
  private readonly binsInput: HTMLInputElement;
  private readonly toggleInputs: Record<string, HTMLInputElement> = {};
  private readonly histogramCanvas: HTMLCanvasElement;
  private readonly noticeBox: HTMLElement;
  private artifact: ArtifactJson | null = null;
  private state: ViewState | null = null;
  private brushStart: number | null = null;
  private brushCurrent: number | null = null;

  constructor(
    root: HTMLElement,
    private readonly callbacks: ControlCallbacks,
  ) {
    this.datasetSelect = root.querySelector<HTMLSelectElement>("#dataset-select")!;
    this.colorSelect = root.querySelector<HTMLSelectElement>("#color-mode")!;
    this.histogramModeSelect = root.querySelector<HTMLSelectElement>("#histogram-mode")!;
    this.binsInput = root.querySelector<HTMLInputElement>("#histogram-bins")!;
    this.histogramCanvas = root.querySelector<HTMLCanvasElement>("#distance-histogram")!;
    this.noticeBox = root.querySelector<HTMLElement>("#notice")!;
    for (const key of ["neighborLinks", "dominanceGlyphs", "clusterLabels"]) {
      this.toggleInputs[key] = root.querySelector<HTMLInputElement>(`#toggle-${key}`)!;
    }

    this.datasetSelect.addEventListener("change", () =>
      this.callbacks.onDataset(this.datasetSelect.value),
    );
    this.colorSelect.addEventListener("change", () =>
      this.callbacks.onColorMode(this.colorSelect.value as ColorMode),
    );
    this.histogramModeSelect.addEventListener("change", () =>
      this.callbacks.onHistogramMode(this.histogramModeSelect.value as DistanceMode),
    );
    this.binsInput.addEventListener("change", () => {
      const bins = Number(this.binsInput.value);
      if (Number.isInteger(bins) && bins >= 1) this.callbacks.onHistogramBins(bins);
    });
    for (const [key, input] of Object.entries(this.toggleInputs)) {
      input.addEventListener("change", () =>
        this.callbacks.onToggle(
          key as "neighborLinks" | "dominanceGlyphs" | "clusterLabels",
          input.checked,
        ),
      );
    }
    this.histogramCanvas.addEventListener("pointerdown", (e) => this.onBrushStart(e));
    this.histogramCanvas.addEventListener("pointermove", (e) => this.onBrushMove(e));
    this.histogramCanvas.addEventListener("pointerup", (e) => this.onBrushEnd(e));
  }

  setDatasets(datasets: DatasetSummary[], selected: string | null): void {
    this.datasetSelect.replaceChildren();
    for (const dataset of datasets) {
      const option = document.createElement("option");
      option.value = dataset.id;
      option.textContent = `${dataset.id} (${dataset.problem}, N=${dataset.n_solutions})`;
      if (dataset.id === selected) option.selected = true;
      this.datasetSelect.append(option);
    }
  }

  setArtifact(artifact: ArtifactJson): void {
    this.artifact = artifact;
  }

  showNotice(message: string): void {
    this.noticeBox.replaceChildren();
    const text = document.createElement("span");
    text.textContent = message;
    const dismiss = document.createElement("button");
    dismiss.textContent = "dismiss";
    dismiss.addEventListener("click", () => this.noticeBox.replaceChildren());
    this.noticeBox.append(text, dismiss);
  }

  render(state: ViewState): void {
    if (!this.artifact) return;
    this.state = state;
    this.colorSelect.value = state.colorMode;
    this.histogramModeSelect.value = state.histogramMode;
    this.binsInput.value = String(state.histogramBins);
    this.toggleInputs.neighborLinks.checked = state.neighborLinks;
    this.toggleInputs.dominanceGlyphs.checked = state.dominanceGlyphs;
    this.toggleInputs.clusterLabels.checked = state.clusterLabels;
    this.drawHistogram(this.artifact, state);
  }

  private drawHistogram(artifact: ArtifactJson, state: ViewState): void {
    const canvas = this.histogramCanvas;
    const ctx = canvas.getContext("2d")!;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const histogram = distanceHistogram(artifact, state);
    const plotWidth = canvas.width - HIST_MARGIN.left - HIST_MARGIN.right;
    const plotHeight = canvas.height - HIST_MARGIN.top - HIST_MARGIN.bottom;
    const total = histogram.counts.reduce((a, b) => a + b, 0);
    if (total === 0) {
      ctx.fillStyle = "#888";
      ctx.font = "11px sans-serif";
      ctx.fillText("no distances (empty reference set)", HIST_MARGIN.left, canvas.height / 2);
      return;
    }
    const peak = Math.max(...histogram.counts);
    const barWidth = plotWidth / histogram.counts.length;
    ctx.fillStyle = "#5b8dce";
    histogram.counts.forEach((count, bin) => {
      const barHeight = peak > 0 ? (count / peak) * plotHeight : 0;
      ctx.fillRect(
        HIST_MARGIN.left + bin * barWidth,
        HIST_MARGIN.top + plotHeight - barHeight,
        Math.max(barWidth - 1, 1),
        barHeight,
      );
    });
    ctx.strokeStyle = "#333";
    ctx.beginPath();
    ctx.moveTo(HIST_MARGIN.left, HIST_MARGIN.top + plotHeight + 0.5);
    ctx.lineTo(HIST_MARGIN.left + plotWidth, HIST_MARGIN.top + plotHeight + 0.5);
    ctx.stroke();

    const interval =
      this.brushStart !== null && this.brushCurrent !== null
        ? ([
            Math.min(this.brushStart, this.brushCurrent),
            Math.max(this.brushStart, this.brushCurrent),
          ] as [number, number])
        : state.histogramBrush;
    if (interval) {
      const scale = this.valueScale();
      const x1 = scale.apply(interval[0]);
      const x2 = scale.apply(interval[1]);
      ctx.fillStyle = "rgba(59, 111, 182, 0.25)";
      ctx.fillRect(x1, HIST_MARGIN.top, x2 - x1, plotHeight);
    }
  }

  private valueScale() {
    const histogram = distanceHistogram(this.artifact!, this.state!);
    return linearScale({ min: histogram.min, max: histogram.max }, [
      HIST_MARGIN.left,
      this.histogramCanvas.width - HIST_MARGIN.right,
    ]);
  }

  private localX(e: PointerEvent): number {
    return e.clientX - this.histogramCanvas.getBoundingClientRect().left;
  }

  private onBrushStart(e: PointerEvent): void {
    if (!this.artifact || !this.state) return;
    this.histogramCanvas.setPointerCapture(e.pointerId);
    this.brushStart = this.valueScale().invert(this.localX(e));
    this.brushCurrent = this.brushStart;
  }

  private onBrushMove(e: PointerEvent): void {
    if (this.brushStart === null || !this.artifact || !this.state) return;
    this.brushCurrent = this.valueScale().invert(this.localX(e));
    this.drawHistogram(this.artifact, this.state);
  }

  private onBrushEnd(e: PointerEvent): void {
    if (this.brushStart === null || !this.artifact || !this.state) return;
    this.histogramCanvas.releasePointerCapture(e.pointerId);
    const end = this.valueScale().invert(this.localX(e));
    const start = this.brushStart;
    this.brushStart = null;
    this.brushCurrent = null;
    if (Math.abs(end - start) < 1e-12) {
      this.callbacks.onHistogramBrush(null);
      return;
    }
    this.callbacks.onHistogramBrush([Math.min(start, end), Math.max(start, end)]);
  }
}
