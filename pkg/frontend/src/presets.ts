/** "An example" buttons: canned board + panel settings for each tab.
 *
 * Each preset fills the board and panel inputs; running the panel then
 * sends an ordinary request, so a preset is replayable and editable.
 */

import type { BoardState } from "./state.js";
import { initialState, latticeNodes } from "./state.js";
import type { BosonPanel, MultiPanel, QswPanel, QwPanel } from "./requests.js";

export interface QwPreset {
  board: BoardState;
  panel: QwPanel;
}

/** 21 x 21 lattice at 15 um pitch, photon in the center, z = 5 cm. */
export function qwExample(): QwPreset {
  const board: BoardState = {
    ...initialState(),
    nodes: latticeNodes(21, 21, 15, 15),
    inject: 221,
    tab: "qw",
  };
  return { board, panel: { z_cm: 5, fine: false } };
}

export interface QswPreset {
  board: BoardState;
  panel: QswPanel;
}

/** 5 x 5 lattice at 12 um pitch, noise 1/mm every 0.1 mm, z = 5 mm,
 * tracking the center (13) and the corner (1) from 2 mm to 5 mm. */
export function qswExample(): QswPreset {
  const board: BoardState = {
    ...initialState(),
    nodes: latticeNodes(5, 5, 12, 12),
    inject: 13,
    tab: "qsw",
  };
  return {
    board,
    panel: {
      z_cm: 0.5,
      amplitude_per_mm: 1,
      z_interval_mm: 0.1,
      realizations: 50,
      seed: 5,
      watch: [13, 1],
      z_range_cm: [0.2, 0.5],
    },
  };
}

export interface MultiPreset {
  board: BoardState;
  panel: MultiPanel;
}

/** Nine guides in a line spaced 10*sqrt(2) um, three bosons |100010001>,
 * z = 10 mm, correlation fixing one photon at node 1, three tracked states. */
export function multiExample(): MultiPreset {
  const spacing = 10 * Math.SQRT2;
  const board: BoardState = {
    ...initialState(),
    nodes: latticeNodes(9, 1, spacing, spacing),
    tab: "multi",
  };
  return {
    board,
    panel: {
      state: "|100010001>",
      statistics: "bosonic",
      z_cm: 1,
      watch_states: ["|000020001>", "|3,1;5,1;8,1>", "|1,1;8,1;9,1>"],
      fixed: "|100000000>",
    },
  };
}

export interface BosonPreset {
  board: BoardState;
  panel: BosonPanel;
}

/** Twelve-mode triangular mesh, randomized parameters, |000000000111>. */
export function bosonExample(seed: number = freshSeed()): BosonPreset {
  const occupations = [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1];
  const board: BoardState = { ...initialState(), occupations, tab: "boson" };
  return {
    board,
    panel: {
      modes: 12,
      style: "reck",
      source: "random",
      parameters: [],
      random_seed: seed,
    },
  };
}

/** Two photons meeting on one balanced splitter; the bunching check. */
export function homPreset(): BosonPreset {
  const board: BoardState = {
    ...initialState(),
    occupations: [1, 1],
    tab: "boson",
  };
  return {
    board,
    panel: {
      modes: 2,
      style: "clements",
      source: "parameters",
      parameters: [{ order: 1, theta: Math.PI / 4, phi: 0 }],
      random_seed: 0,
    },
  };
}

function freshSeed(): number {
  return Math.floor(Math.random() * 2 ** 31);
}
