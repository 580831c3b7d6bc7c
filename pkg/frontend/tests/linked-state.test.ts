/** Linked-view integration: one ViewState drives consistent marks everywhere. */

import { describe, expect, it } from "vitest";

import { pcpModel, scatterMarks, tableRows } from "../src/marks.js";
import { rasterRgba } from "../src/render/density.js";
import { inInterval } from "../src/histogram.js";
import {
  brushHistogram,
  hoverSolution,
  initialViewState,
  moveAxis,
  selectReferencesByLasso,
  setHistogramMode,
  setToggle,
  validateViewState,
} from "../src/state.js";
import type { Point } from "../src/types.js";
import { makeArtifact } from "./fixture.js";

const artifact = makeArtifact();
const SPACES = ["decision", "objective"] as const;
const ENCLOSING: Point[] = [
  [-10, -10],
  [10, -10],
  [10, 10],
  [-10, 10],
];

describe("hover marks exactly one red point per scatterplot and one PCP edge", () => {
  it("holds for every solution id", () => {
    for (const solution of artifact.solutions) {
      const state = hoverSolution(initialViewState(artifact), artifact, solution.id);
      for (const space of SPACES) {
        const hovered = scatterMarks(artifact, state, space).filter((m) => m.hovered);
        expect(hovered).toHaveLength(1);
        expect(hovered[0].id).toBe(solution.id);
      }
      const highlighted = pcpModel(artifact, state).edges.filter((e) => e.highlighted);
      expect(highlighted).toHaveLength(1);
      expect(highlighted[0].id).toBe(solution.id);
      const rows = tableRows(artifact, state).filter((r) => r.hovered);
      expect(rows).toHaveLength(1);
      expect(rows[0].id).toBe(solution.id);
    }
  });

  it("clearing the hover leaves no red mark anywhere", () => {
    let state = hoverSolution(initialViewState(artifact), artifact, 101);
    state = hoverSolution(state, artifact, null);
    for (const space of SPACES) {
      expect(scatterMarks(artifact, state, space).some((m) => m.hovered)).toBe(false);
    }
    expect(pcpModel(artifact, state).edges.some((e) => e.highlighted)).toBe(false);
  });
});

describe("density lasso renders an orange patch and orange PCP reference edges", () => {
  it("stores the patch and emits orange edges for the selected references", () => {
    const patch = makeArtifact().density!;
    const state = selectReferencesByLasso(
      initialViewState(artifact),
      artifact,
      ENCLOSING,
      [0, 1, 2, 3],
      patch,
    );
    expect(state.lasso!.patch).toBe(patch);

    const edges = pcpModel(artifact, state).referenceEdges;
    expect(edges.map((e) => e.refIndex)).toEqual([0, 1, 2, 3]);
    for (const edge of edges) {
      expect(edge.color).toBe("#ff8c00");
      expect(edge.values.slice(0, artifact.meta.n_dec)).toEqual([null, null]);
      expect(edge.values.slice(artifact.meta.n_dec).every((v) => typeof v === "number")).toBe(
        true,
      );
    }
  });

  it("rasterizes the patch with orange pixels and density-scaled alpha", () => {
    const patch = makeArtifact().density!;
    const pixels = rasterRgba(patch, [255, 140, 0], 235);
    expect(pixels).toHaveLength(patch.w * patch.h * 4);
    let covered = 0;
    for (let cell = 0; cell < patch.w * patch.h; cell++) {
      expect(pixels[cell * 4]).toBe(255);
      expect(pixels[cell * 4 + 1]).toBe(140);
      expect(pixels[cell * 4 + 2]).toBe(0);
      if (pixels[cell * 4 + 3] > 0) covered += 1;
    }
    expect(covered).toBe(patch.values.filter((v) => v > 0).length);
    const peakCell = patch.values.indexOf(Math.max(...patch.values));
    const peakRow = Math.floor(peakCell / patch.w);
    const flippedRow = patch.h - 1 - peakRow;
    expect(pixels[(flippedRow * patch.w + (peakCell % patch.w)) * 4 + 3]).toBe(235);
  });
});

describe("histogram brush strokes exactly the in-interval solutions", () => {
  it("matches membership for both distance modes and several intervals", () => {
    const intervals: [number, number][] = [
      [0.15, 0.45],
      [0.0, 0.1],
      [0.6, 0.9],
      [-5, 5],
      [0.35, 0.35],
    ];
    for (const mode of ["nearest_ref_dist", "nearest_sol_dist"] as const) {
      for (const interval of intervals) {
        let state = setHistogramMode(initialViewState(artifact), mode);
        state = brushHistogram(state, interval);
        const expected = artifact.annotations[mode]
          .map((value, i) => [value, i] as const)
          .filter(([value]) => inInterval(value, interval))
          .map(([, i]) => i);
        for (const space of SPACES) {
          const stroked = scatterMarks(artifact, state, space)
            .filter((m) => m.stroked)
            .map((m) => m.index);
          expect(stroked).toEqual(expected);
        }
        const emphasized = pcpModel(artifact, state)
          .edges.filter((e) => e.emphasized)
          .map((e) => e.index);
        expect(emphasized).toEqual(expected);
      }
    }
  });

  it("clearing the brush removes all strokes", () => {
    let state = brushHistogram(initialViewState(artifact), [0.2, 0.5]);
    state = brushHistogram(state, null);
    expect(scatterMarks(artifact, state, "objective").some((m) => m.stroked)).toBe(false);
  });
});

describe("axis drag produces the new permutation in ViewState", () => {
  it("moves an axis and keeps a valid permutation", () => {
    const state = moveAxis(initialViewState(artifact), artifact, 0, 3);
    expect(state.axisOrder).toEqual([1, 2, 3, 0, 4]);
    expect(() => validateViewState(state, artifact)).not.toThrow();
    expect(pcpModel(artifact, state).axes.map((a) => a.name)).toEqual([
      "dec2",
      "obj1",
      "obj2",
      "dec1",
      "obj3",
    ]);
  });

  it("chained drags compose", () => {
    let state = moveAxis(initialViewState(artifact), artifact, 0, 4);
    state = moveAxis(state, artifact, 3, 0);
    expect(state.axisOrder).toEqual([4, 1, 2, 3, 0]);
    expect(() => validateViewState(state, artifact)).not.toThrow();
  });
});

describe("dominance toggle switches flagged points from dots to crosses", () => {
  it("only dominated solutions change shape, in both panels", () => {
    const off = initialViewState(artifact);
    const on = setToggle(off, "dominanceGlyphs", true);
    for (const space of SPACES) {
      expect(scatterMarks(artifact, off, space).every((m) => m.shape === "dot")).toBe(true);
      const marks = scatterMarks(artifact, on, space);
      marks.forEach((mark, i) => {
        expect(mark.shape).toBe(artifact.annotations.dominated[i] ? "cross" : "dot");
      });
    }
  });

  it("toggling back restores dots everywhere", () => {
    let state = setToggle(initialViewState(artifact), "dominanceGlyphs", true);
    state = setToggle(state, "dominanceGlyphs", false);
    expect(scatterMarks(artifact, state, "decision").every((m) => m.shape === "dot")).toBe(true);
  });
});
