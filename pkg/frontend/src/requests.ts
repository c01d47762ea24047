/** Build gateway request bodies from the board and panel inputs. */

import type { BoardState } from "./state.js";
import { occupationState } from "./state.js";
import type {
  BosonRequest,
  LayoutBody,
  MeshStyle,
  MultiRequest,
  Pair,
  QswRequest,
  QwRequest,
  SplitterBody,
  Statistics,
} from "./types.js";

export function layoutBody(s: BoardState): LayoutBody {
  const positions: Pair[] = s.nodes.map((n) => [n.x, n.y]);
  const body: LayoutBody = { positions };
  if (s.nodes.some((n) => !n.stochastic)) {
    body.stochastic_flags = s.nodes.map((n) => n.stochastic);
  }
  return body;
}

export interface QwPanel {
  z_cm: number;
  fine: boolean;
}

export function qwRequest(s: BoardState, panel: QwPanel): QwRequest {
  return {
    layout: layoutBody(s),
    inject: s.inject,
    z_cm: panel.z_cm,
    resolution: panel.fine ? [500, 500] : [100, 100],
  };
}

export interface QswPanel {
  z_cm: number;
  amplitude_per_mm: number;
  z_interval_mm: number;
  realizations: number;
  seed: number;
  watch: number[];
  z_range_cm: [number, number] | null;
}

export function qswRequest(s: BoardState, panel: QswPanel): QswRequest {
  const body: QswRequest = {
    layout: layoutBody(s),
    inject: s.inject,
    z_cm: panel.z_cm,
    dbeta: {
      amplitude_per_mm: panel.amplitude_per_mm,
      z_interval_mm: panel.z_interval_mm,
      realizations: panel.realizations,
      seed: panel.seed,
    },
  };
  if (panel.watch.length > 0) body.watch = panel.watch;
  if (panel.z_range_cm !== null) body.z_range_cm = panel.z_range_cm;
  return body;
}

export interface MultiPanel {
  state: string;
  statistics: Statistics;
  z_cm: number;
  watch_states: string[];
  fixed: string | null;
}

export function multiRequest(s: BoardState, panel: MultiPanel): MultiRequest {
  const body: MultiRequest = {
    layout: layoutBody(s),
    state: panel.state,
    statistics: panel.statistics,
    z_cm: panel.z_cm,
  };
  if (panel.watch_states.length > 0) body.watch_states = panel.watch_states;
  if (panel.fixed !== null && panel.fixed.length > 0) body.fixed = panel.fixed;
  return body;
}

export interface BosonPanel {
  modes: number;
  style: MeshStyle;
  source: "parameters" | "random" | "unitary";
  parameters: SplitterBody[];
  random_seed: number;
}

export function bosonRequest(s: BoardState, panel: BosonPanel): BosonRequest {
  const body: BosonRequest = {
    modes: panel.modes,
    state: occupationState(s.occupations),
    style: panel.style,
  };
  if (panel.source === "random") {
    body.random_seed = panel.random_seed;
  } else {
    body.parameters = panel.parameters;
  }
  return body;
}
