/** The interactive waveguide board.
 *
 * Left click places a node at the cursor, right click removes the last
 * one, shift+left click selects a node for the modify panel. The cursor's
 * board coordinates show in the top-left readout. On the QSW tab nodes
 * draw blue when their propagation constant stays fixed and red when the
 * noise touches them; the injection node carries a ring marker.
 */

import type { BoardState } from "./state.js";

export interface BoardView {
  /** um per pixel; board coordinates snap to 0.1 um. */
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface BoardCallbacks {
  onPlace(x: number, y: number): void;
  onRemoveLast(): void;
  onSelect(index: number): void;
  onHover(x: number, y: number): void;
}

const NODE_RADIUS = 6;

export function defaultView(): BoardView {
  return { scale: 0.55, offsetX: 40, offsetY: 40 };
}

export function toBoard(view: BoardView, px: number, py: number): [number, number] {
  const x = (px - view.offsetX) * view.scale;
  const y = (py - view.offsetY) * view.scale;
  return [Math.round(x * 10) / 10, Math.round(y * 10) / 10];
}

export function toPixels(view: BoardView, x: number, y: number): [number, number] {
  return [x / view.scale + view.offsetX, y / view.scale + view.offsetY];
}

/** Fit the view so every node lands inside the canvas with a margin. */
export function fitView(
  view: BoardView,
  canvas: HTMLCanvasElement,
  state: BoardState,
): void {
  if (state.nodes.length === 0) return;
  let maxX = 0;
  let maxY = 0;
  for (const n of state.nodes) {
    maxX = Math.max(maxX, n.x);
    maxY = Math.max(maxY, n.y);
  }
  const margin = 46;
  const spanX = Math.max(maxX, 1);
  const spanY = Math.max(maxY, 1);
  view.scale = Math.max(
    spanX / Math.max(canvas.width - 2 * margin, 1),
    spanY / Math.max(canvas.height - 2 * margin, 1),
    0.02,
  );
  view.offsetX = margin;
  view.offsetY = margin;
}

export function hitNode(
  view: BoardView,
  state: BoardState,
  px: number,
  py: number,
): number {
  for (let i = state.nodes.length - 1; i >= 0; i -= 1) {
    const node = state.nodes[i]!;
    const [nx, ny] = toPixels(view, node.x, node.y);
    if ((px - nx) ** 2 + (py - ny) ** 2 <= (NODE_RADIUS + 3) ** 2) return i;
  }
  return -1;
}

export function drawBoard(
  canvas: HTMLCanvasElement,
  view: BoardView,
  state: BoardState,
): void {
  const ctx = canvas.getContext("2d");
  if (ctx === null) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#fbfbf7";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#e3e0d5";
  ctx.lineWidth = 1;
  const stepUm = 25;
  const stepPx = stepUm / view.scale;
  if (stepPx > 8) {
    for (let x = view.offsetX; x < canvas.width; x += stepPx) {
      ctx.beginPath();
      ctx.moveTo(x, 0);
      ctx.lineTo(x, canvas.height);
      ctx.stroke();
    }
    for (let y = view.offsetY; y < canvas.height; y += stepPx) {
      ctx.beginPath();
      ctx.moveTo(0, y);
      ctx.lineTo(canvas.width, y);
      ctx.stroke();
    }
  }
  const colorByFlag = state.tab === "qsw";
  state.nodes.forEach((node, i) => {
    const [px, py] = toPixels(view, node.x, node.y);
    ctx.beginPath();
    ctx.arc(px, py, NODE_RADIUS, 0, 2 * Math.PI);
    ctx.fillStyle = colorByFlag
      ? node.stochastic
        ? "#d6452e"
        : "#2e63d6"
      : "#4a4a46";
    ctx.fill();
    if (i === state.selected) {
      ctx.strokeStyle = "#111";
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(px, py, NODE_RADIUS + 4, 0, 2 * Math.PI);
      ctx.stroke();
    }
    if (i + 1 === state.inject && state.tab !== "boson") {
      ctx.strokeStyle = "#e8a014";
      ctx.lineWidth = 2.4;
      ctx.beginPath();
      ctx.arc(px, py, NODE_RADIUS + 7, 0, 2 * Math.PI);
      ctx.stroke();
    }
    if (state.showLabels) {
      ctx.fillStyle = "#333";
      ctx.font = "10px system-ui, sans-serif";
      ctx.fillText(String(i + 1), px + NODE_RADIUS + 2, py - NODE_RADIUS);
    }
  });
}

export function bindBoard(
  canvas: HTMLCanvasElement,
  view: BoardView,
  currentState: () => BoardState,
  callbacks: BoardCallbacks,
): void {
  canvas.addEventListener("click", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const px = ev.clientX - rect.left;
    const py = ev.clientY - rect.top;
    if (ev.shiftKey) {
      const hit = hitNode(view, currentState(), px, py);
      if (hit >= 0) callbacks.onSelect(hit);
      return;
    }
    const [x, y] = toBoard(view, px, py);
    callbacks.onPlace(x, y);
  });
  canvas.addEventListener("contextmenu", (ev) => {
    ev.preventDefault();
    callbacks.onRemoveLast();
  });
  canvas.addEventListener("mousemove", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const [x, y] = toBoard(view, ev.clientX - rect.left, ev.clientY - rect.top);
    callbacks.onHover(x, y);
  });
}
