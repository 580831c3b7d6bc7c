/** Hand-built artifact with known values for every view-model test. */

import type { ArtifactJson } from "../src/types.js";

/** Six solutions, four references, 2 decision vars, 3 objectives.
 *
 * Ids are deliberately offset from indices (100..105) to catch id/index
 * mix-ups. Reference objective values stretch past the solution range on
 * obj1 (7.0 > 6.0) and obj2 (4.5 < 5.0) so axis domains must include them.
 */
export function makeArtifact(): ArtifactJson {
  return {
    schema_version: "1.0",
    meta: {
      problem: "demo",
      algorithm: "nsga2",
      n_dec: 2,
      n_obj: 3,
      n_solutions: 6,
      n_references: 4,
      sense: ["min", "min", "min"],
    },
    solutions: [
      { id: 100, dec: [0.0, 5.0], obj: [1.0, 10.0, 0.3] },
      { id: 101, dec: [1.0, 4.0], obj: [2.0, 9.0, 0.25] },
      { id: 102, dec: [2.0, 3.0], obj: [3.0, 8.0, 0.2] },
      { id: 103, dec: [3.0, 2.0], obj: [4.0, 7.0, 0.15] },
      { id: 104, dec: [4.0, 1.0], obj: [5.0, 6.0, 0.1] },
      { id: 105, dec: [5.0, 0.0], obj: [6.0, 5.0, 0.05] },
    ],
    references: [
      [1.5, 9.5, 0.28],
      [3.5, 7.5, 0.18],
      [7.0, 4.5, 0.08],
      [2.5, 8.5, 0.22],
    ],
    layout: {
      method: "tsne",
      seed: 0,
      decision: [
        [0, 0],
        [1, 0],
        [2, 0],
        [3, 0],
        [4, 0],
        [5, 0],
      ],
      objective: [
        [0, 1],
        [1, 1],
        [2, 1],
        [3, 1],
        [4, 1],
        [5, 1],
      ],
      reference: [
        [0.5, 1.5],
        [1.5, 1.5],
        [2.5, 1.5],
        [3.5, 1.5],
      ],
    },
    density: {
      w: 4,
      h: 3,
      bounds: [0, 0, 4, 3],
      bandwidth: 0.5,
      values: [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1],
      outliers: [2],
    },
    annotations: {
      nearest_ref_dist: [0.1, 0.2, 0.3, 0.4, 0.5, 0.6],
      nearest_sol_dist: [1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
      nearest_sol_idx: [1, 0, 3, 2, 5, 4],
      dominated: [false, true, false, false, true, false],
      cluster: [0, 0, 1, 1, -1, 0],
    },
  };
}

/** The same solutions with no reference set: density null, no ref distances. */
export function makeBareArtifact(): ArtifactJson {
  const artifact = makeArtifact();
  artifact.meta.n_references = 0;
  artifact.references = [];
  artifact.layout.reference = [];
  artifact.density = null;
  artifact.annotations.nearest_ref_dist = [];
  return artifact;
}
