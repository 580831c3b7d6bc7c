/** Pure view models derived from (artifact, ViewState).
 *
 * Renderers paint exactly what these functions return, so every linked
 * highlight can be tested without a DOM. Flags carry distinct meanings:
 * `hovered` renders red, `stroked` renders a dark outline (brush matches),
 * `selected` renders the orange lasso highlight.
 */

import type { ArtifactJson, Point } from "./types.js";
import type { Space, ViewState } from "./state.js";
import { solutionIndexById } from "./state.js";
import { buildHistogram, inInterval, type Histogram } from "./histogram.js";
import {
  clusterColor,
  extentOf,
  formatValue,
  normalized,
  sequentialGreen,
  type Extent,
} from "./scales.js";

export interface ScatterMark {
  index: number;
  id: number;
  x: number;
  y: number;
  shape: "dot" | "cross";
  radius: number;
  fill: string;
  hovered: boolean;
  stroked: boolean;
  selected: boolean;
}

export interface OutlierMark {
  refIndex: number;
  x: number;
  y: number;
  radius: number;
  fill: string;
  selected: boolean;
}

export interface PcpAxis {
  axis: number;
  name: string;
  kind: "decision" | "objective";
  domain: Extent;
  histogram: Histogram;
}

export interface PcpEdge {
  index: number;
  id: number;
  values: number[];
  highlighted: boolean;
  emphasized: boolean;
  selected: boolean;
}

export interface PcpReferenceEdge {
  refIndex: number;
  /** One entry per ordered axis; null where a reference has no value. */
  values: (number | null)[];
  color: string;
}

export interface PcpModel {
  axes: PcpAxis[];
  edges: PcpEdge[];
  referenceEdges: PcpReferenceEdge[];
}

export interface TableRow {
  index: number;
  id: number;
  cells: string[];
  hovered: boolean;
  stroked: boolean;
  selected: boolean;
}

export interface ArrowSegment {
  fromIndex: number;
  toIndex: number;
  from: Point;
  to: Point;
}

export interface NeighborLink {
  fromIndex: number;
  toIndex: number;
  from: Point;
  to: Point;
}

export interface ClusterLabelMark {
  label: number;
  x: number;
  y: number;
  color: string;
}

export function axisName(artifact: ArtifactJson, axis: number): string {
  const { n_dec } = artifact.meta;
  return axis < n_dec ? `dec${axis + 1}` : `obj${axis - n_dec + 1}`;
}

export function axisValue(artifact: ArtifactJson, index: number, axis: number): number {
  const { n_dec } = artifact.meta;
  const solution = artifact.solutions[index];
  return axis < n_dec ? solution.dec[axis] : solution.obj[axis - n_dec];
}

function hoveredIndex(artifact: ArtifactJson, state: ViewState): number {
  if (state.hoveredSolution === null) return -1;
  return solutionIndexById(artifact, state.hoveredSolution);
}

function distanceValues(artifact: ArtifactJson, mode: "nearest_ref_dist" | "nearest_sol_dist") {
  return artifact.annotations[mode];
}

/** True when any axis brush or the histogram brush is active. */
export function filtersActive(state: ViewState): boolean {
  return Object.keys(state.axisBrushes).length > 0 || state.histogramBrush !== null;
}

/** True when solution `index` satisfies every active brush filter. */
export function passesFilters(
  artifact: ArtifactJson,
  state: ViewState,
  index: number,
): boolean {
  for (const [key, interval] of Object.entries(state.axisBrushes)) {
    if (!inInterval(axisValue(artifact, index, Number(key)), interval)) return false;
  }
  if (state.histogramBrush !== null) {
    const values = distanceValues(artifact, state.histogramMode);
    if (index >= values.length) return false;
    if (!inInterval(values[index], state.histogramBrush)) return false;
  }
  return true;
}

function strokedFlags(artifact: ArtifactJson, state: ViewState): boolean[] {
  const active = filtersActive(state);
  return artifact.solutions.map((_, i) => active && passesFilters(artifact, state, i));
}

function selectedSolutionSet(state: ViewState): Set<number> {
  if (state.lasso && state.lasso.target === "solutions") {
    return new Set(state.lasso.solutionIndices);
  }
  return new Set();
}

function fillColors(artifact: ArtifactJson, state: ViewState): string[] {
  const n = artifact.solutions.length;
  if (state.colorMode === "cluster") {
    return artifact.annotations.cluster.map(clusterColor);
  }
  const values = distanceValues(artifact, state.colorMode);
  if (values.length !== n) return new Array(n).fill(sequentialGreen(0.5));
  const extent = extentOf(values);
  return values.map((v) => sequentialGreen(normalized(v, extent)));
}

export function scatterMarks(
  artifact: ArtifactJson,
  state: ViewState,
  space: Space,
): ScatterMark[] {
  const coords = space === "decision" ? artifact.layout.decision : artifact.layout.objective;
  const fills = fillColors(artifact, state);
  const stroked = strokedFlags(artifact, state);
  const selected = selectedSolutionSet(state);
  const hovered = hoveredIndex(artifact, state);
  return artifact.solutions.map((solution, i) => ({
    index: i,
    id: solution.id,
    x: coords[i][0],
    y: coords[i][1],
    shape:
      state.dominanceGlyphs && artifact.annotations.dominated[i] ? ("cross" as const) : ("dot" as const),
    radius: 3,
    fill: fills[i],
    hovered: i === hovered,
    stroked: stroked[i],
    selected: selected.has(i),
  }));
}

/** Preserved density outliers, drawn as smaller gray dots in the objective panel. */
export function outlierMarks(artifact: ArtifactJson, state: ViewState): OutlierMark[] {
  if (!artifact.density) return [];
  const selected = new Set(
    state.lasso && state.lasso.target === "references" ? state.lasso.referenceIndices : [],
  );
  return artifact.density.outliers.map((refIndex) => ({
    refIndex,
    x: artifact.layout.reference[refIndex][0],
    y: artifact.layout.reference[refIndex][1],
    radius: 1.8,
    fill: "#9aa0a6",
    selected: selected.has(refIndex),
  }));
}

export function pcpModel(artifact: ArtifactJson, state: ViewState): PcpModel {
  const { n_dec } = artifact.meta;
  const axes: PcpAxis[] = state.axisOrder.map((axis) => {
    const values = artifact.solutions.map((_, i) => axisValue(artifact, i, axis));
    if (axis >= n_dec) {
      for (const ref of artifact.references) values.push(ref[axis - n_dec]);
    }
    const solutionValues = values.slice(0, artifact.solutions.length);
    return {
      axis,
      name: axisName(artifact, axis),
      kind: axis < n_dec ? ("decision" as const) : ("objective" as const),
      domain: extentOf(values),
      histogram: buildHistogram(solutionValues, state.histogramBins),
    };
  });
  const stroked = strokedFlags(artifact, state);
  const selected = selectedSolutionSet(state);
  const hovered = hoveredIndex(artifact, state);
  const edges: PcpEdge[] = artifact.solutions.map((solution, i) => ({
    index: i,
    id: solution.id,
    values: state.axisOrder.map((axis) => axisValue(artifact, i, axis)),
    highlighted: i === hovered,
    emphasized: stroked[i],
    selected: selected.has(i),
  }));
  const referenceEdges: PcpReferenceEdge[] = [];
  if (state.lasso && state.lasso.target === "references") {
    for (const refIndex of state.lasso.referenceIndices) {
      referenceEdges.push({
        refIndex,
        values: state.axisOrder.map((axis) =>
          axis < n_dec ? null : artifact.references[refIndex][axis - n_dec],
        ),
        color: "#ff8c00",
      });
    }
  }
  return { axes, edges, referenceEdges };
}

export function distanceHistogram(artifact: ArtifactJson, state: ViewState): Histogram {
  return buildHistogram([...distanceValues(artifact, state.histogramMode)], state.histogramBins);
}

export type TableSortColumn = "id" | number;

export function tableRows(
  artifact: ArtifactJson,
  state: ViewState,
  sortColumn: TableSortColumn | null = null,
  descending = false,
): TableRow[] {
  const stroked = strokedFlags(artifact, state);
  const selected = selectedSolutionSet(state);
  const hovered = hoveredIndex(artifact, state);
  const axes = artifact.meta.n_dec + artifact.meta.n_obj;
  const rows = artifact.solutions.map((solution, i) => ({
    index: i,
    id: solution.id,
    cells: Array.from({ length: axes }, (_, axis) => formatValue(axisValue(artifact, i, axis))),
    hovered: i === hovered,
    stroked: stroked[i],
    selected: selected.has(i),
  }));
  if (sortColumn !== null) {
    const key = (row: TableRow): number =>
      sortColumn === "id" ? row.id : axisValue(artifact, row.index, sortColumn);
    rows.sort((a, b) => key(a) - key(b) || a.id - b.id);
    if (descending) rows.reverse();
  }
  return rows;
}

export interface Tooltip {
  id: number;
  lines: string[];
}

export function tooltip(artifact: ArtifactJson, state: ViewState): Tooltip | null {
  const index = hoveredIndex(artifact, state);
  if (index < 0) return null;
  const refDist = artifact.annotations.nearest_ref_dist;
  const solDist = artifact.annotations.nearest_sol_dist;
  return {
    id: artifact.solutions[index].id,
    lines: [
      `id ${artifact.solutions[index].id}`,
      `nearest ref dist ${index < refDist.length ? formatValue(refDist[index]) : "n/a"}`,
      `nearest sol dist ${formatValue(solDist[index])}`,
    ],
  };
}

/** Dashed hover link from a solution to its nearest neighbor in objective space. */
export function neighborLink(artifact: ArtifactJson, state: ViewState): NeighborLink | null {
  if (!state.neighborLinks) return null;
  const index = hoveredIndex(artifact, state);
  if (index < 0) return null;
  const toIndex = artifact.annotations.nearest_sol_idx[index];
  if (toIndex < 0 || toIndex >= artifact.solutions.length) return null;
  const coords = artifact.layout.objective;
  return {
    fromIndex: index,
    toIndex,
    from: [coords[index][0], coords[index][1]],
    to: [coords[toIndex][0], coords[toIndex][1]],
  };
}

/** Arrow chain from smallest to largest axis value; ties break by id. */
export function rankingArrows(
  artifact: ArtifactJson,
  state: ViewState,
  space: Space,
): ArrowSegment[] {
  if (!state.ranking || state.ranking.mode === "off") return [];
  const axis = state.ranking.axis;
  const selected = selectedSolutionSet(state);
  let indices: number[];
  if (selected.size === 0) {
    indices = artifact.solutions.map((_, i) => i);
  } else if (selected.size >= 2) {
    indices = [...selected];
  } else {
    return [];
  }
  indices.sort(
    (a, b) =>
      axisValue(artifact, a, axis) - axisValue(artifact, b, axis) ||
      artifact.solutions[a].id - artifact.solutions[b].id,
  );
  const coords = space === "decision" ? artifact.layout.decision : artifact.layout.objective;
  const segments: ArrowSegment[] = [];
  for (let i = 0; i + 1 < indices.length; i++) {
    const fromIndex = indices[i];
    const toIndex = indices[i + 1];
    segments.push({
      fromIndex,
      toIndex,
      from: [coords[fromIndex][0], coords[fromIndex][1]],
      to: [coords[toIndex][0], coords[toIndex][1]],
    });
  }
  return segments;
}

/** Cluster id labels at cluster centroids; noise (-1) gets no label. */
export function clusterLabelMarks(
  artifact: ArtifactJson,
  state: ViewState,
  space: Space,
): ClusterLabelMark[] {
  if (!state.clusterLabels || state.colorMode !== "cluster") return [];
  const coords = space === "decision" ? artifact.layout.decision : artifact.layout.objective;
  const sums = new Map<number, { x: number; y: number; n: number }>();
  artifact.annotations.cluster.forEach((label, i) => {
    if (label < 0) return;
    const entry = sums.get(label) ?? { x: 0, y: 0, n: 0 };
    entry.x += coords[i][0];
    entry.y += coords[i][1];
    entry.n += 1;
    sums.set(label, entry);
  });
  return [...sums.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([label, { x, y, n }]) => ({
      label,
      x: x / n,
      y: y / n,
      color: clusterColor(label),
    }));
}
