/** JSON shapes served by the backend, mirrored field for field. */

export interface MetaJson {
  problem: string;
  algorithm: string;
  n_dec: number;
  n_obj: number;
  n_solutions: number;
  n_references: number;
  sense: string[];
}

export interface SolutionJson {
  id: number;
  dec: number[];
  obj: number[];
}

export interface LayoutJson {
  method: string;
  seed: number;
  decision: number[][];
  objective: number[][];
  reference: number[][];
}

/** Raster of KDE values, row-major with row 0 at the y_min edge. */
export interface DensityFieldJson {
  w: number;
  h: number;
  bounds: [number, number, number, number];
  bandwidth: number;
  values: number[];
  outliers: number[];
}

export interface AnnotationsJson {
  nearest_ref_dist: number[];
  nearest_sol_dist: number[];
  nearest_sol_idx: number[];
  dominated: boolean[];
  cluster: number[];
}

export interface ArtifactJson {
  schema_version: string;
  meta: MetaJson;
  solutions: SolutionJson[];
  references: number[][];
  layout: LayoutJson;
  density: DensityFieldJson | null;
  annotations: AnnotationsJson;
}

export interface DatasetSummary {
  id: string;
  problem: string;
  algorithm: string;
  n_solutions: number;
  n_objectives: number;
  n_decision_vars: number;
  n_references: number;
}

export interface LassoResponse {
  indices: number[];
  patch: DensityFieldJson;
}

export type Point = [number, number];
