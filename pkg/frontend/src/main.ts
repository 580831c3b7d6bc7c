/** Application bootstrap: loads a dataset and wires every view to one ViewState. */

import { ApiClient, ApiError } from "./api.js";
import { containedIndices } from "./geometry.js";
import { tooltip } from "./marks.js";
import {
  brushAxis,
  brushHistogram,
  clearLasso,
  cycleRanking,
  hoverSolution,
  initialViewState,
  moveAxis,
  selectReferencesByLasso,
  selectSolutionsByLasso,
  setColorMode,
  setHistogramBins,
  setHistogramMode,
  setToggle,
  validateViewState,
  type Space,
  type ViewState,
} from "./state.js";
import type { ArtifactJson, Point } from "./types.js";
import { ControlPanel } from "./render/controls.js";
import { PcpPanel } from "./render/pcp.js";
import { ScatterPanel } from "./render/scatter.js";
import { DataTable } from "./render/table.js";

class App {
  private readonly api = new ApiClient("", (input, init) => fetch(input, init));
  private artifact: ArtifactJson | null = null;
  private datasetId: string | null = null;
  private state: ViewState | null = null;
  private readonly decisionPanel: ScatterPanel;
  private readonly objectivePanel: ScatterPanel;
  private readonly pcp: PcpPanel;
  private readonly controls: ControlPanel;
  private readonly table: DataTable;
  private readonly tooltipBox = document.getElementById("tooltip")!;
  private lassoTarget: "solutions" | "density" = "solutions";

  constructor() {
    this.decisionPanel = new ScatterPanel(
      document.getElementById("decision-canvas") as HTMLCanvasElement,
      "decision",
      this.scatterCallbacks("decision"),
    );
    this.objectivePanel = new ScatterPanel(
      document.getElementById("objective-canvas") as HTMLCanvasElement,
      "objective",
      this.scatterCallbacks("objective"),
    );
    this.pcp = new PcpPanel(document.getElementById("pcp") as unknown as SVGSVGElement, {
      onHover: (id) => this.setHover(id, null),
      onBrush: (axis, interval) =>
        this.update((s, a) => brushAxis(s, a, axis, interval)),
      onReorder: (from, to) => this.update((s, a) => moveAxis(s, a, from, to)),
      onRankingClick: (axis) => this.update((s, a) => cycleRanking(s, a, axis)),
    });
    this.controls = new ControlPanel(document.getElementById("controls")!, {
      onDataset: (id) => void this.loadDataset(id),
      onColorMode: (mode) => this.update((s) => setColorMode(s, mode)),
      onToggle: (key, on) => this.update((s) => setToggle(s, key, on)),
      onHistogramMode: (mode) => this.update((s) => setHistogramMode(s, mode)),
      onHistogramBins: (bins) => this.update((s) => setHistogramBins(s, bins)),
      onHistogramBrush: (interval) => this.update((s) => brushHistogram(s, interval)),
    });
    this.table = new DataTable(document.getElementById("table-container")!, {
      onHover: (id) => this.setHover(id, null),
    });
    for (const input of document.querySelectorAll<HTMLInputElement>("input[name=lasso-target]")) {
      input.addEventListener("change", () => {
        if (input.checked) this.lassoTarget = input.value as "solutions" | "density";
      });
    }
  }

  async start(): Promise<void> {
    try {
      const datasets = await this.api.listDatasets();
      if (datasets.length === 0) {
        this.controls.showNotice("no datasets registered on the server");
        return;
      }
      this.controls.setDatasets(datasets, datasets[0].id);
      await this.loadDataset(datasets[0].id);
    } catch (error) {
      this.controls.showNotice(`failed to load datasets: ${describe(error)}`);
    }
  }

  private async loadDataset(id: string): Promise<void> {
    try {
      const artifact = await this.api.getArtifact(id);
      this.artifact = artifact;
      this.datasetId = id;
      this.state = initialViewState(artifact);
      this.decisionPanel.setArtifact(artifact);
      this.objectivePanel.setArtifact(artifact);
      this.pcp.setArtifact(artifact);
      this.controls.setArtifact(artifact);
      this.table.setArtifact(artifact);
      const densityRadio = document.querySelector<HTMLInputElement>(
        "input[name=lasso-target][value=density]",
      );
      if (densityRadio) {
        densityRadio.disabled = artifact.density === null;
        if (artifact.density === null && this.lassoTarget === "density") {
          this.lassoTarget = "solutions";
          const solutionsRadio = document.querySelector<HTMLInputElement>(
            "input[name=lasso-target][value=solutions]",
          );
          if (solutionsRadio) solutionsRadio.checked = true;
        }
      }
      this.renderAll();
    } catch (error) {
      this.controls.showNotice(`failed to load dataset ${id}: ${describe(error)}`);
    }
  }

  private scatterCallbacks(space: Space) {
    return {
      onHover: (id: number | null, clientX: number, clientY: number) =>
        this.setHover(id, id === null ? null : [clientX, clientY]),
      onLasso: (polygon: Point[]) => void this.onLasso(space, polygon),
      onLassoCleared: () => this.update((s) => clearLasso(s)),
    };
  }

  private async onLasso(space: Space, polygon: Point[]): Promise<void> {
    if (!this.artifact || !this.state || !this.datasetId) return;
    const artifact = this.artifact;
    if (space === "objective" && this.lassoTarget === "density") {
      try {
        const response = await this.api.lasso(this.datasetId, polygon);
        if (response === null) return;
        this.update((s, a) =>
          response.indices.length === 0
            ? clearLasso(s)
            : selectReferencesByLasso(s, a, polygon, response.indices, response.patch),
        );
      } catch (error) {
        this.controls.showNotice(`lasso rejected: ${describe(error)}`);
      }
      return;
    }
    const coords = space === "decision" ? artifact.layout.decision : artifact.layout.objective;
    const indices = containedIndices(coords, polygon);
    this.update((s, a) =>
      indices.length === 0 ? clearLasso(s) : selectSolutionsByLasso(s, a, space, polygon, indices),
    );
  }

  private setHover(id: number | null, client: Point | null): void {
    this.update((s, a) => hoverSolution(s, a, id));
    if (!this.artifact || !this.state) return;
    const tip = tooltip(this.artifact, this.state);
    if (tip === null || client === null) {
      this.tooltipBox.style.display = "none";
      return;
    }
    this.tooltipBox.replaceChildren();
    for (const line of tip.lines) {
      const div = document.createElement("div");
      div.textContent = line;
      this.tooltipBox.append(div);
    }
    this.tooltipBox.style.display = "block";
    this.tooltipBox.style.left = `${client[0] + 12}px`;
    this.tooltipBox.style.top = `${client[1] + 12}px`;
  }

  private update(transition: (state: ViewState, artifact: ArtifactJson) => ViewState): void {
    if (!this.artifact || !this.state) return;
    try {
      const next = transition(this.state, this.artifact);
      validateViewState(next, this.artifact);
      this.state = next;
      this.renderAll();
    } catch (error) {
      this.controls.showNotice(describe(error));
    }
  }

  private renderAll(): void {
    if (!this.state) return;
    this.decisionPanel.render(this.state);
    this.objectivePanel.render(this.state);
    this.pcp.render(this.state);
    this.controls.render(this.state);
    this.table.render(this.state);
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.status}: ${error.message}`;
  if (error instanceof Error) return error.message;
  return String(error);
}

new App().start();
