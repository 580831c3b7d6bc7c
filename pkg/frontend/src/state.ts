/** The single source of truth every view renders from, plus its transitions.
 *
 * All functions are pure: they take the current state (and the loaded
 * artifact for validation) and return a new state. No view keeps private
 * selection state.
 */

import type { ArtifactJson, DensityFieldJson, Point } from "./types.js";

export type ColorMode = "cluster" | "nearest_ref_dist" | "nearest_sol_dist";
export type DistanceMode = "nearest_ref_dist" | "nearest_sol_dist";
export type Space = "decision" | "objective";
export type RankingMode = "asc" | "off";

export interface LassoSelection {
  space: Space;
  target: "solutions" | "references";
  polygon: Point[];
  solutionIndices: number[];
  referenceIndices: number[];
  patch: DensityFieldJson | null;
}

export interface ViewState {
  hoveredSolution: number | null;
  lasso: LassoSelection | null;
  /** Axis index (in artifact order, decisions then objectives) to interval. */
  axisBrushes: Record<number, [number, number]>;
  /** Permutation of 0..n_dec+n_obj-1; left-to-right PCP order. */
  axisOrder: number[];
  colorMode: ColorMode;
  neighborLinks: boolean;
  dominanceGlyphs: boolean;
  clusterLabels: boolean;
  ranking: { axis: number; mode: RankingMode } | null;
  histogramMode: DistanceMode;
  histogramBrush: [number, number] | null;
  histogramBins: number;
}

export function axisCount(artifact: ArtifactJson): number {
  return artifact.meta.n_dec + artifact.meta.n_obj;
}

export function initialViewState(artifact: ArtifactJson): ViewState {
  return {
    hoveredSolution: null,
    lasso: null,
    axisBrushes: {},
    axisOrder: Array.from({ length: axisCount(artifact) }, (_, i) => i),
    colorMode: "cluster",
    neighborLinks: false,
    dominanceGlyphs: false,
    clusterLabels: true,
    ranking: null,
    histogramMode: "nearest_ref_dist",
    histogramBrush: null,
    histogramBins: 20,
  };
}

function checkSolutionId(artifact: ArtifactJson, id: number): void {
  if (!artifact.solutions.some((s) => s.id === id)) {
    throw new Error(`unknown solution id ${id}`);
  }
}

function checkAxis(artifact: ArtifactJson, axis: number): void {
  if (!Number.isInteger(axis) || axis < 0 || axis >= axisCount(artifact)) {
    throw new Error(`axis ${axis} out of range`);
  }
}

export function solutionIndexById(artifact: ArtifactJson, id: number): number {
  return artifact.solutions.findIndex((s) => s.id === id);
}

export function hoverSolution(
  state: ViewState,
  artifact: ArtifactJson,
  id: number | null,
): ViewState {
  if (id !== null) checkSolutionId(artifact, id);
  return { ...state, hoveredSolution: id };
}

export function selectSolutionsByLasso(
  state: ViewState,
  artifact: ArtifactJson,
  space: Space,
  polygon: Point[],
  solutionIndices: number[],
): ViewState {
  for (const index of solutionIndices) {
    if (index < 0 || index >= artifact.solutions.length) {
      throw new Error(`solution index ${index} out of range`);
    }
  }
  return {
    ...state,
    lasso: {
      space,
      target: "solutions",
      polygon,
      solutionIndices: [...solutionIndices].sort((a, b) => a - b),
      referenceIndices: [],
      patch: null,
    },
  };
}

export function selectReferencesByLasso(
  state: ViewState,
  artifact: ArtifactJson,
  polygon: Point[],
  referenceIndices: number[],
  patch: DensityFieldJson | null,
): ViewState {
  for (const index of referenceIndices) {
    if (index < 0 || index >= artifact.references.length) {
      throw new Error(`reference index ${index} out of range`);
    }
  }
  return {
    ...state,
    lasso: {
      space: "objective",
      target: "references",
      polygon,
      solutionIndices: [],
      referenceIndices: [...referenceIndices].sort((a, b) => a - b),
      patch,
    },
  };
}

export function clearLasso(state: ViewState): ViewState {
  return { ...state, lasso: null };
}

export function brushAxis(
  state: ViewState,
  artifact: ArtifactJson,
  axis: number,
  interval: [number, number] | null,
): ViewState {
  checkAxis(artifact, axis);
  const axisBrushes = { ...state.axisBrushes };
  if (interval === null) {
    delete axisBrushes[axis];
  } else {
    const [lo, hi] = interval;
    axisBrushes[axis] = lo <= hi ? [lo, hi] : [hi, lo];
  }
  return { ...state, axisBrushes };
}

/** Drag of the axis at position `from` dropped at position `to`. */
export function moveAxis(
  state: ViewState,
  artifact: ArtifactJson,
  from: number,
  to: number,
): ViewState {
  const order = [...state.axisOrder];
  if (from < 0 || from >= order.length || to < 0 || to >= order.length) {
    throw new Error(`axis position out of range: ${from} -> ${to}`);
  }
  const [moved] = order.splice(from, 1);
  order.splice(to, 0, moved);
  const next = { ...state, axisOrder: order };
  validateViewState(next, artifact);
  return next;
}

export function setColorMode(state: ViewState, mode: ColorMode): ViewState {
  return { ...state, colorMode: mode };
}

export function setToggle(
  state: ViewState,
  key: "neighborLinks" | "dominanceGlyphs" | "clusterLabels",
  on: boolean,
): ViewState {
  return { ...state, [key]: on };
}

/** The triangular icon next to an axis name cycles asc -> off -> asc. */
export function cycleRanking(state: ViewState, artifact: ArtifactJson, axis: number): ViewState {
  checkAxis(artifact, axis);
  const active = state.ranking !== null && state.ranking.axis === axis;
  const mode: RankingMode = active && state.ranking!.mode === "asc" ? "off" : "asc";
  return { ...state, ranking: { axis, mode } };
}

export function setHistogramMode(state: ViewState, mode: DistanceMode): ViewState {
  return { ...state, histogramMode: mode, histogramBrush: null };
}

export function brushHistogram(state: ViewState, interval: [number, number] | null): ViewState {
  if (interval === null) return { ...state, histogramBrush: null };
  const [lo, hi] = interval;
  return { ...state, histogramBrush: lo <= hi ? [lo, hi] : [hi, lo] };
}

export function setHistogramBins(state: ViewState, bins: number): ViewState {
  if (!Number.isInteger(bins) || bins < 1) throw new Error(`bad bin count ${bins}`);
  return { ...state, histogramBins: bins };
}

/** Asserts the cross-cutting invariants; throws on the first violation. */
export function validateViewState(state: ViewState, artifact: ArtifactJson): void {
  const axes = axisCount(artifact);
  if (state.axisOrder.length !== axes) {
    throw new Error(`axis order has ${state.axisOrder.length} entries, expected ${axes}`);
  }
  const seen = new Set(state.axisOrder);
  if (seen.size !== axes || state.axisOrder.some((a) => a < 0 || a >= axes)) {
    throw new Error("axis order is not a permutation");
  }
  if (state.hoveredSolution !== null) checkSolutionId(artifact, state.hoveredSolution);
  if (state.lasso) {
    for (const index of state.lasso.solutionIndices) {
      if (index < 0 || index >= artifact.solutions.length) {
        throw new Error(`lasso solution index ${index} out of range`);
      }
    }
    for (const index of state.lasso.referenceIndices) {
      if (index < 0 || index >= artifact.references.length) {
        throw new Error(`lasso reference index ${index} out of range`);
      }
    }
  }
  for (const key of Object.keys(state.axisBrushes)) checkAxis(artifact, Number(key));
  if (state.ranking) checkAxis(artifact, state.ranking.axis);
}
