/** Board state and its pure transition functions.
 *
 * Every edit returns a fresh state (or an error string) so the store can
 * keep an undo history of snapshots. All physics stays server-side; the
 * only rule enforced here is the one the gateway would also reject,
 * duplicate coordinates, so client validation never exceeds the server's.
 */

export type Tab = "qw" | "qsw" | "multi" | "boson";

export interface BoardNode {
  x: number;
  y: number;
  /** QSW tab: red marker (noise applies) when true, blue when false. */
  stochastic: boolean;
}

export interface BoardState {
  nodes: BoardNode[];
  /** 0-based index of the node picked via shift+click, if any. */
  selected: number | null;
  /** 1-based label of the injection node for single-photon tabs. */
  inject: number;
  tab: Tab;
  /** Boson tab: photons entering each channel, edited by marker clicks. */
  occupations: number[];
  showLabels: boolean;
}

export type EditResult =
  | { ok: true; state: BoardState }
  | { ok: false; error: string };

export const UNDO_DEPTH = 50;

export function initialState(): BoardState {
  return {
    nodes: [],
    selected: null,
    inject: 1,
    tab: "qw",
    occupations: [],
    showLabels: true,
  };
}

function edited(state: BoardState): EditResult {
  return { ok: true, state };
}

function rejected(error: string): EditResult {
  return { ok: false, error };
}

function duplicateOf(
  nodes: readonly BoardNode[],
  x: number,
  y: number,
  skip = -1,
): number {
  return nodes.findIndex((n, i) => i !== skip && n.x === x && n.y === y);
}

export function placeNode(s: BoardState, x: number, y: number): EditResult {
  const hit = duplicateOf(s.nodes, x, y);
  if (hit >= 0) {
    return rejected(`a node already sits at (${x}, ${y}); pick another spot`);
  }
  return edited({ ...s, nodes: [...s.nodes, { x, y, stochastic: true }] });
}

export function removeLastNode(s: BoardState): EditResult {
  if (s.nodes.length === 0) return rejected("the board is empty");
  const nodes = s.nodes.slice(0, -1);
  return edited({
    ...s,
    nodes,
    selected: s.selected !== null && s.selected >= nodes.length ? null : s.selected,
    inject: Math.min(s.inject, Math.max(nodes.length, 1)),
  });
}

export function modifyNode(
  s: BoardState,
  index: number,
  x: number,
  y: number,
): EditResult {
  const node = s.nodes[index];
  if (node === undefined) return rejected(`no node ${index + 1} on the board`);
  if (duplicateOf(s.nodes, x, y, index) >= 0) {
    return rejected(`a node already sits at (${x}, ${y}); pick another spot`);
  }
  const nodes = s.nodes.slice();
  nodes[index] = { ...node, x, y };
  return edited({ ...s, nodes });
}

export function clearBoard(s: BoardState): EditResult {
  return edited({ ...s, nodes: [], selected: null, inject: 1 });
}

export function toggleStochastic(s: BoardState, index: number): EditResult {
  const node = s.nodes[index];
  if (node === undefined) return rejected(`no node ${index + 1} on the board`);
  const nodes = s.nodes.slice();
  nodes[index] = { ...node, stochastic: !node.stochastic };
  return edited({ ...s, nodes });
}

export function selectNode(s: BoardState, index: number | null): EditResult {
  if (index !== null && (index < 0 || index >= s.nodes.length)) {
    return rejected(`no node ${index + 1} on the board`);
  }
  return edited({ ...s, selected: index });
}

export function setInject(s: BoardState, label: number): EditResult {
  if (!Number.isInteger(label) || label < 1 || label > s.nodes.length) {
    return rejected(`inject point ${label} is not a node label`);
  }
  return edited({ ...s, inject: label });
}

export function setTab(s: BoardState, tab: Tab): EditResult {
  return edited({ ...s, tab });
}

export function toggleLabels(s: BoardState): EditResult {
  return edited({ ...s, showLabels: !s.showLabels });
}

export function setModeCount(s: BoardState, modes: number): EditResult {
  if (!Number.isInteger(modes) || modes < 1) {
    return rejected(`mode count ${modes} must be a positive integer`);
  }
  const occupations = Array.from(
    { length: modes },
    (_, i) => s.occupations[i] ?? 0,
  );
  return edited({ ...s, occupations });
}

/** Boson tab injection markers: left click adds a photon to the channel. */
export function incrementOccupation(s: BoardState, channel: number): EditResult {
  const count = s.occupations[channel];
  if (count === undefined) return rejected(`no channel ${channel + 1}`);
  const occupations = s.occupations.slice();
  occupations[channel] = count + 1;
  return edited({ ...s, occupations });
}

/** Boson tab injection markers: right click removes one, floor at zero. */
export function decrementOccupation(s: BoardState, channel: number): EditResult {
  const count = s.occupations[channel];
  if (count === undefined) return rejected(`no channel ${channel + 1}`);
  if (count === 0) return rejected(`channel ${channel + 1} is already empty`);
  const occupations = s.occupations.slice();
  occupations[channel] = count - 1;
  return edited({ ...s, occupations });
}

export function occupationState(occupations: readonly number[]): string {
  return `|${occupations.join("")}>`;
}

/** Fill the board with an nx-by-ny grid, numbering left-to-right then top-to-bottom. */
export function latticeNodes(
  nx: number,
  ny: number,
  dx: number,
  dy: number,
): BoardNode[] {
  const nodes: BoardNode[] = [];
  for (let row = 0; row < ny; row += 1) {
    for (let col = 0; col < nx; col += 1) {
      nodes.push({ x: col * dx, y: row * dy, stochastic: true });
    }
  }
  return nodes;
}

/** Store with an undo history of at least UNDO_DEPTH previous snapshots. */
export class BoardStore {
  private state: BoardState;
  private history: BoardState[] = [];

  constructor(state: BoardState = initialState()) {
    this.state = state;
  }

  current(): BoardState {
    return this.state;
  }

  /** Apply a pure edit; on success the old snapshot joins the history. */
  apply(edit: (s: BoardState) => EditResult): EditResult {
    const result = edit(this.state);
    if (result.ok) {
      this.history.push(this.state);
      if (this.history.length > UNDO_DEPTH) this.history.shift();
      this.state = result.state;
    }
    return result;
  }

  /** Replace the whole state (presets); still undoable. */
  replace(state: BoardState): void {
    this.history.push(this.state);
    if (this.history.length > UNDO_DEPTH) this.history.shift();
    this.state = state;
  }

  undo(): boolean {
    const prev = this.history.pop();
    if (prev === undefined) return false;
    this.state = prev;
    return true;
  }

  undoDepth(): number {
    return this.history.length;
  }
}
