/** Application wiring: board, panels, gateway calls, result rendering.
 *
 * All numbers rendered here came from the gateway; the browser only
 * draws. A 4xx response always lands in the banner and clears the
 * affected result blocks, never renders as a result.
 */

import { Gateway, PanelRunner } from "./api.js";
import {
  bindBoard,
  defaultView,
  drawBoard,
  fitView,
} from "./board.js";
import {
  renderBarChart,
  renderCorrelation,
  renderRaster,
  renderSeries,
} from "./charts.js";
import {
  distributionCsv,
  gridCsv,
  parametersCsv,
  positionsCsv,
  resultsCsv,
  seriesCsv,
  unitaryCsv,
} from "./export.js";
import {
  barChart,
  correlationModel,
  decodeRaster,
  seriesModel,
  SCROLL_THRESHOLD,
} from "./model.js";
import { renderMesh } from "./meshview.js";
import { parseAngle } from "./pi.js";
import {
  bosonExample,
  homPreset,
  multiExample,
  qswExample,
  qwExample,
} from "./presets.js";
import {
  bosonRequest,
  multiRequest,
  qswRequest,
  qwRequest,
} from "./requests.js";
import type { BosonPanel, MultiPanel, QswPanel, QwPanel } from "./requests.js";
import {
  BoardStore,
  clearBoard,
  modifyNode,
  occupationState,
  placeNode,
  removeLastNode,
  selectNode,
  setInject,
  setModeCount,
  setTab,
  toggleLabels,
  toggleStochastic,
  incrementOccupation,
  decrementOccupation,
} from "./state.js";
import type { BoardState, Tab } from "./state.js";
import type {
  BosonResponse,
  MeshLayoutResponse,
  MeshSite,
  MeshStyle,
  MultiResponse,
  QswResponse,
  QwResponse,
  SplitterBody,
  Statistics,
} from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

const gateway = new Gateway("");
const runners = {
  qw: new PanelRunner(gateway),
  qsw: new PanelRunner(gateway),
  multi: new PanelRunner(gateway),
  boson: new PanelRunner(gateway),
};

const store = new BoardStore();
const view = defaultView();

const boardCanvas = el<HTMLCanvasElement>("board");
const meshHost = el<HTMLDivElement>("mesh-board");
const banner = el<HTMLDivElement>("banner");
const readout = el<HTMLDivElement>("coord-readout");
const rasterCanvas = el<HTMLCanvasElement>("raster");
const barsHost = el<HTMLDivElement>("bars");
const seriesHost = el<HTMLDivElement>("series");
const correlationHost = el<HTMLDivElement>("correlation");
const rasterBlock = el<HTMLDivElement>("result-raster");
const correlationBlock = el<HTMLDivElement>("result-correlation");
const seriesBlock = el<HTMLDivElement>("result-series");
const nodeList = el<HTMLDivElement>("node-list");

interface Caches {
  qw: QwResponse | null;
  qsw: QswResponse | null;
  multi: MultiResponse | null;
  boson: BosonResponse | null;
  mesh: MeshLayoutResponse | null;
}
const cache: Caches = { qw: null, qsw: null, multi: null, boson: null, mesh: null };

/** Splitter parameters edited on the mesh board, keyed by order. */
const meshParams = new Map<number, SplitterBody>();
const hiddenBadges = new Set<number>();
let meshBadges = true;
let selectedSplitter: number | null = null;
let bosonSource: "parameters" | "random" = "random";
let bosonSeed = 7;

function colormap(): string {
  return el<HTMLSelectElement>("colormap").value;
}

function showBanner(message: string, kind: "error" | "notice" = "error"): void {
  banner.textContent = message;
  banner.classList.remove("hidden");
  banner.classList.toggle("notice", kind === "notice");
}

function hideBanner(): void {
  banner.classList.add("hidden");
}

function redraw(): void {
  drawBoard(boardCanvas, view, store.current());
  const s = store.current();
  el<HTMLInputElement>("boson-state").value = occupationState(s.occupations);
  if (s.tab === "boson") redrawMesh();
}

function applyEdit(edit: (s: BoardState) => ReturnType<typeof placeNode>): void {
  const result = store.apply(edit);
  if (!result.ok) {
    showBanner(result.error);
  } else {
    hideBanner();
  }
  redraw();
}

bindBoard(boardCanvas, view, () => store.current(), {
  onPlace: (x, y) => applyEdit((s) => placeNode(s, x, y)),
  onRemoveLast: () => applyEdit(removeLastNode),
  onSelect: (index) => {
    applyEdit((s) => selectNode(s, index));
    const node = store.current().nodes[index];
    if (node !== undefined) {
      el<HTMLInputElement>("sel-index").value = String(index + 1);
      el<HTMLInputElement>("sel-x").value = String(node.x);
      el<HTMLInputElement>("sel-y").value = String(node.y);
    }
  },
  onHover: (x, y) => {
    readout.textContent = `x: ${x.toFixed(1)} um, y: ${y.toFixed(1)} um`;
  },
});

el<HTMLButtonElement>("btn-clear").addEventListener("click", () => {
  applyEdit(clearBoard);
});
el<HTMLButtonElement>("btn-undo").addEventListener("click", () => {
  if (!store.undo()) showBanner("nothing to undo", "notice");
  else hideBanner();
  redraw();
});
el<HTMLButtonElement>("btn-labels").addEventListener("click", () => {
  applyEdit(toggleLabels);
});
el<HTMLButtonElement>("btn-view-list").addEventListener("click", () => {
  const s = store.current();
  nodeList.classList.toggle("hidden");
  nodeList.textContent = s.nodes
    .map((n, i) => `${i + 1}\t${n.x}\t${n.y}\t${n.stochastic ? "dbeta" : "fixed"}`)
    .join("\n");
});
el<HTMLButtonElement>("btn-confirm-node").addEventListener("click", () => {
  const index = Number(el<HTMLInputElement>("sel-index").value) - 1;
  const x = Number(el<HTMLInputElement>("sel-x").value);
  const y = Number(el<HTMLInputElement>("sel-y").value);
  if (!Number.isInteger(index) || index < 0) {
    showBanner("select a node first (shift + left click)");
    return;
  }
  if (!Number.isFinite(x) || !Number.isFinite(y)) {
    showBanner("node coordinates must be numbers");
    return;
  }
  applyEdit((s) => modifyNode(s, index, x, y));
});
el<HTMLButtonElement>("btn-stochastic").addEventListener("click", () => {
  const index = store.current().selected;
  if (index === null) {
    showBanner("select a node first (shift + left click)");
    return;
  }
  applyEdit((s) => toggleStochastic(s, index));
});

// -- tabs ------------------------------------------------------------

function activateTab(tab: Tab): void {
  applyEdit((s) => setTab(s, tab));
  document.querySelectorAll<HTMLButtonElement>("#tabs .tab").forEach((b) => {
    b.classList.toggle("active", b.dataset["tab"] === tab);
  });
  document.querySelectorAll<HTMLFormElement>(".panel").forEach((p) => {
    p.classList.toggle("active", p.id === `panel-${tab}`);
  });
  const boson = tab === "boson";
  boardCanvas.classList.toggle("hidden", boson);
  meshHost.classList.toggle("hidden", !boson);
  el<HTMLFieldSetElement>("modify-panel").classList.toggle("hidden", boson);
  el<HTMLFieldSetElement>("splitter-panel").classList.toggle("hidden", !boson);
  el<HTMLButtonElement>("btn-stochastic").classList.toggle(
    "hidden",
    tab !== "qsw",
  );
  rasterBlock.classList.toggle("hidden", !(tab === "qw" || tab === "multi"));
  correlationBlock.classList.toggle("hidden", tab !== "multi");
  seriesBlock.classList.toggle("hidden", !(tab === "qsw" || tab === "multi"));
  if (boson) void refreshMeshLayout();
  redraw();
}

document.querySelectorAll<HTMLButtonElement>("#tabs .tab").forEach((b) => {
  b.addEventListener("click", () => activateTab(b.dataset["tab"] as Tab));
});

// -- renders ----------------------------------------------------------

function renderBars(distribution: Record<string, number>): void {
  const model = barChart(distribution);
  const style = el<HTMLSelectElement>("bar-style").value;
  model.scroll = style === "scroll" || model.bars.length > SCROLL_THRESHOLD;
  renderBarChart(barsHost, model);
}

function clearResults(): void {
  barsHost.replaceChildren();
  seriesHost.replaceChildren();
  correlationHost.replaceChildren();
  const ctx = rasterCanvas.getContext("2d");
  ctx?.clearRect(0, 0, rasterCanvas.width, rasterCanvas.height);
}

function renderQw(data: QwResponse): void {
  renderBars(data.distribution);
  renderRaster(rasterCanvas, decodeRaster(data.raster), colormap());
}

function renderQsw(data: QswResponse): void {
  renderBars(data.distribution);
  renderSeries(seriesHost, seriesModel(data.series));
}

function renderMulti(data: MultiResponse): void {
  if (data.distribution !== null) renderBars(data.distribution);
  if (data.series !== null) renderSeries(seriesHost, seriesModel(data.series));
  if (data.correlation !== null) {
    renderCorrelation(
      correlationHost,
      correlationModel(data.correlation),
      el<HTMLSelectElement>("correlation-style").value === "cubic"
        ? "cubic"
        : "planar",
      colormap(),
    );
  }
}

function renderBoson(data: BosonResponse): void {
  renderBars(data.distribution);
}

// -- panel runs --------------------------------------------------------

function readQwPanel(fine: boolean): QwPanel {
  return { z_cm: Number(el<HTMLInputElement>("qw-z").value), fine };
}

async function runQw(fine: boolean): Promise<void> {
  const injectLabel = Number(el<HTMLInputElement>("qw-inject").value);
  const applied = store.apply((s) => setInject(s, injectLabel));
  if (!applied.ok) {
    showBanner(applied.error);
    return;
  }
  redraw();
  const body = qwRequest(store.current(), readQwPanel(fine));
  const result = await runners.qw.run<QwResponse>("/qw", body);
  if (result.kind === "aborted") return;
  if (result.kind === "error") {
    cache.qw = null;
    clearResults();
    showBanner(result.message);
    return;
  }
  hideBanner();
  cache.qw = result.data;
  renderQw(result.data);
}

function parseWatchNodes(text: string): number[] {
  return text
    .split(/[\s,]+/)
    .filter((t) => t.length > 0)
    .map((t) => Number(t));
}

function parseRange(text: string): [number, number] | null {
  const m = /^\s*([0-9.eE+-]+)\s*\.\.\s*([0-9.eE+-]+)\s*$/.exec(text);
  if (m === null) return null;
  return [Number(m[1]), Number(m[2])];
}

function readQswPanel(): QswPanel {
  return {
    z_cm: Number(el<HTMLInputElement>("qsw-z").value),
    amplitude_per_mm: Number(el<HTMLInputElement>("qsw-amplitude").value),
    z_interval_mm: Number(el<HTMLInputElement>("qsw-interval").value),
    realizations: Number(el<HTMLInputElement>("qsw-realizations").value),
    seed: Number(el<HTMLInputElement>("qsw-seed").value),
    watch: parseWatchNodes(el<HTMLInputElement>("qsw-watch").value),
    z_range_cm: parseRange(el<HTMLInputElement>("qsw-range").value),
  };
}

async function runQsw(): Promise<void> {
  const injectLabel = Number(el<HTMLInputElement>("qsw-inject").value);
  const applied = store.apply((s) => setInject(s, injectLabel));
  if (!applied.ok) {
    showBanner(applied.error);
    return;
  }
  redraw();
  const body = qswRequest(store.current(), readQswPanel());
  const result = await runners.qsw.run<QswResponse>("/qsw", body);
  if (result.kind === "aborted") return;
  if (result.kind === "error") {
    cache.qsw = null;
    clearResults();
    showBanner(result.message);
    return;
  }
  hideBanner();
  cache.qsw = result.data;
  renderQsw(result.data);
}

/** Pull |...> tokens so sparse states with commas survive the list split. */
function parseWatchStates(text: string): string[] {
  return text.match(/\|[^>]*>/g) ?? [];
}

function readMultiPanel(): MultiPanel {
  const fixed = el<HTMLInputElement>("multi-fixed").value.trim();
  return {
    state: el<HTMLInputElement>("multi-state").value.trim(),
    statistics: el<HTMLSelectElement>("multi-stats").value as Statistics,
    z_cm: Number(el<HTMLInputElement>("multi-z").value),
    watch_states: parseWatchStates(el<HTMLInputElement>("multi-watch").value),
    fixed: fixed.length > 0 ? fixed : null,
  };
}

async function runMulti(): Promise<void> {
  const body = multiRequest(store.current(), readMultiPanel());
  const result = await runners.multi.run<MultiResponse>("/multiparticle", body);
  if (result.kind === "aborted") return;
  if (result.kind === "error") {
    cache.multi = null;
    clearResults();
    showBanner(result.message);
    return;
  }
  hideBanner();
  cache.multi = result.data;
  renderMulti(result.data);
}

function readBosonPanel(): BosonPanel {
  return {
    modes: Number(el<HTMLInputElement>("boson-modes").value),
    style: el<HTMLSelectElement>("boson-style").value as MeshStyle,
    source: bosonSource,
    parameters: [...meshParams.values()],
    random_seed: bosonSeed,
  };
}

async function runBoson(): Promise<void> {
  const body = bosonRequest(store.current(), readBosonPanel());
  const result = await runners.boson.run<BosonResponse>("/bosonsampling", body);
  if (result.kind === "aborted") return;
  if (result.kind === "error") {
    cache.boson = null;
    clearResults();
    showBanner(result.message);
    return;
  }
  hideBanner();
  cache.boson = result.data;
  renderBoson(result.data);
}

el<HTMLButtonElement>("qw-plot").addEventListener("click", () => void runQw(true));
el<HTMLButtonElement>("qw-plot-quick").addEventListener("click", () =>
  void runQw(false),
);
el<HTMLButtonElement>("qsw-plot").addEventListener("click", () => void runQsw());
el<HTMLButtonElement>("multi-plot").addEventListener("click", () => void runMulti());
el<HTMLButtonElement>("boson-plot").addEventListener("click", () => void runBoson());

// -- boson mesh board ---------------------------------------------------

async function refreshMeshLayout(): Promise<void> {
  const modes = Number(el<HTMLInputElement>("boson-modes").value);
  const style = el<HTMLSelectElement>("boson-style").value as MeshStyle;
  store.apply((s) => setModeCount(s, modes));
  const result = await gateway.get<MeshLayoutResponse>(
    `/mesh/layout?style=${style}&modes=${modes}`,
  );
  if (result.kind === "error") {
    showBanner(result.message);
    return;
  }
  if (result.kind !== "ok") return;
  cache.mesh = result.data;
  for (const site of result.data.sites) {
    if (!meshParams.has(site.order)) {
      meshParams.set(site.order, { order: site.order, theta: 0, phi: 0 });
    }
  }
  for (const order of [...meshParams.keys()]) {
    if (!result.data.sites.some((s: MeshSite) => s.order === order)) {
      meshParams.delete(order);
    }
  }
  redrawMesh();
  redraw();
}

function redrawMesh(): void {
  if (cache.mesh === null) return;
  renderMesh(
    meshHost,
    {
      modes: cache.mesh.modes,
      sites: cache.mesh.sites,
      parameters: meshParams,
      occupations: store.current().occupations,
      selected: selectedSplitter,
      showBadges: meshBadges,
      hiddenBadges,
    },
    {
      onSelectSplitter: (order) => {
        selectedSplitter = order;
        const param = meshParams.get(order);
        el<HTMLInputElement>("bs-order").value = String(order);
        el<HTMLInputElement>("bs-theta").value = String(param?.theta ?? 0);
        el<HTMLInputElement>("bs-phi").value = String(param?.phi ?? 0);
        redrawMesh();
      },
      onToggleBadge: (order) => {
        if (hiddenBadges.has(order)) hiddenBadges.delete(order);
        else hiddenBadges.add(order);
        redrawMesh();
      },
      onChannelClick: (channel, kind) => {
        applyEdit((s) =>
          kind === "add"
            ? incrementOccupation(s, channel)
            : decrementOccupation(s, channel),
        );
        redrawMesh();
      },
    },
  );
}

el<HTMLInputElement>("boson-modes").addEventListener("change", () =>
  void refreshMeshLayout(),
);
el<HTMLSelectElement>("boson-style").addEventListener("change", () => {
  meshParams.clear();
  void refreshMeshLayout();
});
el<HTMLButtonElement>("boson-manual").addEventListener("click", () => {
  bosonSource = "parameters";
  for (const p of meshParams.values()) {
    p.theta = 0;
    p.phi = 0;
  }
  showBanner("manual mesh: all angles reset to 0; shift + left click a splitter", "notice");
  redrawMesh();
});
el<HTMLButtonElement>("boson-random").addEventListener("click", () => {
  bosonSource = "random";
  bosonSeed = Math.floor(Math.random() * 2 ** 31);
  showBanner(`random parameters server-side, seed ${bosonSeed}`, "notice");
});
el<HTMLButtonElement>("btn-confirm-bs").addEventListener("click", () => {
  if (selectedSplitter === null) {
    showBanner("select a splitter first (shift + left click)");
    return;
  }
  const theta = parseAngle(el<HTMLInputElement>("bs-theta").value);
  const phi = parseAngle(el<HTMLInputElement>("bs-phi").value);
  if (theta === null || phi === null) {
    showBanner("angles accept numbers or pi expressions like pi/2");
    return;
  }
  bosonSource = "parameters";
  meshParams.set(selectedSplitter, { order: selectedSplitter, theta, phi });
  el<HTMLInputElement>("bs-theta").value = String(theta);
  el<HTMLInputElement>("bs-phi").value = String(phi);
  hideBanner();
  redrawMesh();
});

// -- presets -------------------------------------------------------------

el<HTMLButtonElement>("qw-example").addEventListener("click", () => {
  const preset = qwExample();
  store.replace(preset.board);
  el<HTMLInputElement>("qw-inject").value = String(preset.board.inject);
  el<HTMLInputElement>("qw-z").value = String(preset.panel.z_cm);
  fitView(view, boardCanvas, preset.board);
  redraw();
  void runQw(preset.panel.fine);
});

el<HTMLButtonElement>("qsw-example").addEventListener("click", () => {
  const preset = qswExample();
  store.replace(preset.board);
  el<HTMLInputElement>("qsw-inject").value = String(preset.board.inject);
  el<HTMLInputElement>("qsw-z").value = String(preset.panel.z_cm);
  el<HTMLInputElement>("qsw-amplitude").value = String(preset.panel.amplitude_per_mm);
  el<HTMLInputElement>("qsw-interval").value = String(preset.panel.z_interval_mm);
  el<HTMLInputElement>("qsw-realizations").value = String(preset.panel.realizations);
  el<HTMLInputElement>("qsw-seed").value = String(preset.panel.seed);
  el<HTMLInputElement>("qsw-watch").value = preset.panel.watch.join(",");
  el<HTMLInputElement>("qsw-range").value = preset.panel.z_range_cm
    ? `${preset.panel.z_range_cm[0]}..${preset.panel.z_range_cm[1]}`
    : "";
  fitView(view, boardCanvas, preset.board);
  redraw();
  void runQsw();
});

el<HTMLButtonElement>("multi-example").addEventListener("click", () => {
  const preset = multiExample();
  store.replace(preset.board);
  el<HTMLInputElement>("multi-state").value = preset.panel.state;
  el<HTMLSelectElement>("multi-stats").value = preset.panel.statistics;
  el<HTMLInputElement>("multi-z").value = String(preset.panel.z_cm);
  el<HTMLInputElement>("multi-watch").value = preset.panel.watch_states.join(", ");
  el<HTMLInputElement>("multi-fixed").value = preset.panel.fixed ?? "";
  fitView(view, boardCanvas, preset.board);
  redraw();
  void runMulti();
});

function applyBosonPreset(preset: ReturnType<typeof homPreset>): void {
  store.replace(preset.board);
  el<HTMLInputElement>("boson-modes").value = String(preset.panel.modes);
  el<HTMLSelectElement>("boson-style").value = preset.panel.style;
  bosonSource = preset.panel.source === "random" ? "random" : "parameters";
  bosonSeed = preset.panel.random_seed;
  meshParams.clear();
  for (const p of preset.panel.parameters) meshParams.set(p.order, { ...p });
  void refreshMeshLayout().then(() => runBoson());
}

el<HTMLButtonElement>("boson-example").addEventListener("click", () => {
  applyBosonPreset(bosonExample());
});
el<HTMLButtonElement>("boson-hom").addEventListener("click", () => {
  applyBosonPreset(homPreset());
});

// -- restyling without refetching -----------------------------------------

el<HTMLSelectElement>("colormap").addEventListener("change", () => {
  if (cache.qw !== null) renderQw(cache.qw);
  if (cache.multi !== null) renderMulti(cache.multi);
});
el<HTMLSelectElement>("correlation-style").addEventListener("change", () => {
  if (cache.multi !== null) renderMulti(cache.multi);
});
el<HTMLSelectElement>("bar-style").addEventListener("change", () => {
  const tab = store.current().tab;
  const dist =
    tab === "qw"
      ? cache.qw?.distribution
      : tab === "qsw"
        ? cache.qsw?.distribution
        : tab === "multi"
          ? cache.multi?.distribution
          : cache.boson?.distribution;
  if (dist != null) renderBars(dist);
});

// -- exports ---------------------------------------------------------------

function download(name: string, text: string, mime = "text/csv"): void {
  const blob = new Blob([text], { type: mime });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = name;
  a.click();
  URL.revokeObjectURL(url);
}

function exportPanel(kind: string): void {
  const nodes = store.current().nodes;
  switch (kind) {
    case "qw-results":
      if (cache.qw !== null) download("results.csv", resultsCsv(cache.qw.distribution));
      break;
    case "qw-positions":
    case "qsw-positions":
      if (nodes.length > 0) download("positions.csv", positionsCsv(nodes));
      break;
    case "qw-picture":
      if (cache.qw !== null) {
        const a = document.createElement("a");
        a.href = rasterCanvas.toDataURL("image/png");
        a.download = "facula.png";
        a.click();
      }
      break;
    case "qsw-results":
      if (cache.qsw !== null)
        download("results.csv", resultsCsv(cache.qsw.distribution));
      break;
    case "qsw-series":
      if (cache.qsw !== null) download("series.csv", seriesCsv(cache.qsw.series));
      break;
    case "multi-distribution":
      if (cache.multi?.distribution != null)
        download("distribution.csv", distributionCsv(cache.multi.distribution));
      break;
    case "multi-correlation":
      if (cache.multi?.correlation != null)
        download("correlation.csv", gridCsv(cache.multi.correlation));
      break;
    case "multi-series":
      if (cache.multi?.series != null)
        download("series.csv", seriesCsv(cache.multi.series));
      break;
    case "boson-distribution":
      if (cache.boson !== null)
        download("distribution.csv", distributionCsv(cache.boson.distribution));
      break;
    case "boson-unitary":
      if (cache.boson !== null)
        download("unitary.csv", unitaryCsv(cache.boson.unitary));
      break;
    case "boson-parameters":
      if (bosonSource === "parameters" && meshParams.size > 0) {
        download("parameters.csv", parametersCsv([...meshParams.values()]));
      } else {
        showBanner(
          "random runs draw parameters server-side; export the unitary instead",
          "notice",
        );
      }
      break;
    default:
      break;
  }
}

document.querySelectorAll<HTMLButtonElement>("[data-export]").forEach((b) => {
  b.addEventListener("click", () => exportPanel(b.dataset["export"] ?? ""));
});

// -- boot -------------------------------------------------------------------

activateTab("qw");
redraw();
