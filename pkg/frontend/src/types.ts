/** Wire types for the gateway's /api/v1 JSON contract. */

export type Pair = [number, number];

export interface LayoutBody {
  positions: Pair[];
  stochastic_flags?: boolean[];
}

export interface QwRequest {
  layout: LayoutBody;
  inject: number;
  z_cm: number;
  sigma_um?: number;
  resolution?: [number, number];
}

export interface DBetaBody {
  amplitude_per_mm: number;
  z_interval_mm: number;
  realizations: number;
  seed: number;
}

export interface QswRequest {
  layout: LayoutBody;
  inject: number;
  z_cm: number;
  dbeta: DBetaBody;
  watch?: number[];
  z_range_cm?: [number, number];
}

export type Statistics = "bosonic" | "fermionic" | "distinguishable";
export type Perspective =
  | "all"
  | "distribution"
  | "correlation"
  | "marginal"
  | "series";

export interface MultiRequest {
  layout: LayoutBody;
  state: string;
  statistics: Statistics;
  distinguishable_rule?: "mixed" | "classical";
  z_cm: number;
  watch_states?: string[];
  fixed?: string;
  perspective?: Perspective;
}

export interface SplitterBody {
  order: number;
  theta: number;
  phi: number;
}

export interface ComplexMatrix {
  real: number[][];
  imag: number[][];
}

export type MeshStyle = "reck" | "clements";

export interface BosonRequest {
  modes: number;
  state: string;
  style?: MeshStyle;
  parameters?: SplitterBody[];
  random_seed?: number;
  unitary?: ComplexMatrix;
}

export interface SeriesPayload {
  z_cm: number[];
  values: Record<string, number[]>;
}

export interface RasterPayload {
  grid_b64: string;
  dtype: string;
  shape: number[];
  extent_um: number[];
  sigma_um: number;
}

interface Enveloped {
  schema_version: string;
  seed: number | null;
}

export interface QwResponse extends Enveloped {
  distribution: Record<string, number>;
  raster: RasterPayload;
}

export interface QswResponse extends Enveloped {
  distribution: Record<string, number>;
  series: SeriesPayload;
}

export interface MultiResponse extends Enveloped {
  input_state: string;
  distribution: Record<string, number> | null;
  correlation: number[][] | null;
  marginal: number[] | null;
  series: SeriesPayload | null;
}

export interface BosonResponse extends Enveloped {
  distribution: Record<string, number>;
  unitary: ComplexMatrix;
}

export interface MeshSite {
  order: number;
  m: number;
  n: number;
  x: number;
  y: number;
}

export interface MeshLayoutResponse extends Enveloped {
  style: MeshStyle;
  modes: number;
  sites: MeshSite[];
}

export interface ValidateUnitaryResponse extends Enveloped {
  ok: boolean;
  max_deviation: number;
  tol: number;
}

/** Error body for 4xx responses; 400 carries detail, 413/422 carry message. */
export interface ApiErrorBody {
  error: string;
  message?: string;
  detail?: { msg?: string; loc?: unknown[] }[];
}
