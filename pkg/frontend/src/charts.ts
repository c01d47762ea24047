/** DOM renderers for the result panels. All numbers arrive precomputed
 * in view models; this file only draws.
 */

import { sampleColormap } from "./colormap.js";
import type {
  BarChartModel,
  CorrelationModel,
  RasterModel,
  SeriesModel,
} from "./model.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function clear(el: HTMLElement): void {
  while (el.firstChild !== null) el.removeChild(el.firstChild);
}

/** Vertical bars with labels; beyond 100 bars the strip scrolls sideways. */
export function renderBarChart(
  host: HTMLElement,
  model: BarChartModel,
): void {
  clear(host);
  host.classList.toggle("scroll", model.scroll);
  const strip = document.createElement("div");
  strip.className = "bar-strip";
  if (model.scroll) {
    strip.style.width = `${model.bars.length * 18}px`;
  }
  for (const bar of model.bars) {
    const cell = document.createElement("div");
    cell.className = "bar-cell";
    const value = document.createElement("div");
    value.className = "bar-value";
    value.title = `${bar.label}: ${bar.value}`;
    const h = model.max > 0 ? (bar.value / model.max) * 100 : 0;
    value.style.height = `${Math.max(h, 0.5)}%`;
    const label = document.createElement("div");
    label.className = "bar-label";
    label.textContent = bar.label;
    cell.append(value, label);
    strip.append(cell);
  }
  host.append(strip);
}

/** Probability-vs-z polylines with a y axis up to the observed maximum. */
export function renderSeries(host: HTMLElement, model: SeriesModel): void {
  clear(host);
  const w = 460;
  const h = 220;
  const pad = 34;
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${w} ${h}`);
  svg.setAttribute("class", "series-plot");
  const z0 = model.z[0] ?? 0;
  const z1 = model.z[model.z.length - 1] ?? 1;
  const span = z1 - z0 || 1;
  const top = model.max > 0 ? model.max : 1;
  const colors = ["#e3563c", "#3c7be3", "#2ca05a", "#b044c9", "#c9a02c"];
  model.lines.forEach((line, li) => {
    const pts = line.points
      .map((p, i) => {
        const x = pad + (((model.z[i] ?? z0) - z0) / span) * (w - pad - 8);
        const y = h - pad - (p / top) * (h - pad - 8);
        return `${x.toFixed(1)},${y.toFixed(1)}`;
      })
      .join(" ");
    const poly = document.createElementNS(SVG_NS, "polyline");
    poly.setAttribute("points", pts);
    poly.setAttribute("fill", "none");
    poly.setAttribute("stroke", colors[li % colors.length]!);
    poly.setAttribute("stroke-width", "1.6");
    svg.append(poly);
    const tag = document.createElementNS(SVG_NS, "text");
    tag.setAttribute("x", String(w - 6));
    tag.setAttribute("y", String(14 + li * 13));
    tag.setAttribute("text-anchor", "end");
    tag.setAttribute("fill", colors[li % colors.length]!);
    tag.setAttribute("class", "series-tag");
    tag.textContent = line.key;
    svg.append(tag);
  });
  const axis = document.createElementNS(SVG_NS, "path");
  axis.setAttribute(
    "d",
    `M ${pad} 8 V ${h - pad} H ${w - 8}`,
  );
  axis.setAttribute("class", "axis");
  svg.append(axis);
  const labels: [string, number, number, string][] = [
    [`${z0} cm`, pad, h - pad + 14, "start"],
    [`${z1} cm`, w - 8, h - pad + 14, "end"],
    [top.toPrecision(3), pad - 4, 14, "end"],
    ["0", pad - 4, h - pad, "end"],
  ];
  for (const [text, x, y, anchor] of labels) {
    const t = document.createElementNS(SVG_NS, "text");
    t.setAttribute("x", String(x));
    t.setAttribute("y", String(y));
    t.setAttribute("text-anchor", anchor);
    t.setAttribute("class", "axis-label");
    t.textContent = text;
    svg.append(t);
  }
  host.append(svg);
}

/** Gaussian facula raster; the grid's row 0 is the bottom scan line. */
export function renderRaster(
  canvas: HTMLCanvasElement,
  model: RasterModel,
  colormap: string,
): void {
  canvas.width = model.cols;
  canvas.height = model.rows;
  const ctx = canvas.getContext("2d");
  if (ctx === null) return;
  const image = ctx.createImageData(model.cols, model.rows);
  const top = model.max > 0 ? model.max : 1;
  for (let r = 0; r < model.rows; r += 1) {
    for (let c = 0; c < model.cols; c += 1) {
      const v = model.values[r * model.cols + c]! / top;
      const [red, green, blue] = sampleColormap(colormap, v);
      const px = ((model.rows - 1 - r) * model.cols + c) * 4;
      image.data[px] = red;
      image.data[px + 1] = green;
      image.data[px + 2] = blue;
      image.data[px + 3] = 255;
    }
  }
  ctx.putImageData(image, 0, 0);
}

/** Two-particle correlation: flat colored pixels, or pseudo-3D bars. */
export function renderCorrelation(
  host: HTMLElement,
  model: CorrelationModel,
  style: "planar" | "cubic",
  colormap: string,
): void {
  clear(host);
  if (style === "planar") {
    const canvas = document.createElement("canvas");
    canvas.className = "correlation-planar";
    const cell = Math.max(4, Math.floor(240 / Math.max(model.n, 1)));
    canvas.width = model.n * cell;
    canvas.height = model.n * cell;
    const ctx = canvas.getContext("2d");
    if (ctx === null) return;
    const top = model.max > 0 ? model.max : 1;
    for (let q = 0; q < model.n; q += 1) {
      for (let r = 0; r < model.n; r += 1) {
        const [red, green, blue] = sampleColormap(
          colormap,
          model.rows[q]![r]! / top,
        );
        ctx.fillStyle = `rgb(${red},${green},${blue})`;
        ctx.fillRect(r * cell, (model.n - 1 - q) * cell, cell, cell);
      }
    }
    host.append(canvas);
    return;
  }
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", "0 0 320 260");
  svg.setAttribute("class", "correlation-cubic");
  const top = model.max > 0 ? model.max : 1;
  const n = model.n;
  const ux = 180 / Math.max(n, 1);
  // painter's order: far rows first so near bars overlap them
  for (let q = n - 1; q >= 0; q -= 1) {
    for (let r = 0; r < n; r += 1) {
      const v = model.rows[q]![r]! / top;
      const height = v * 120;
      const x = 60 + r * ux + q * (ux * 0.45);
      const y = 210 - q * (ux * 0.35);
      const [red, green, blue] = sampleColormap(colormap, v);
      const bar = document.createElementNS(SVG_NS, "g");
      const face = document.createElementNS(SVG_NS, "rect");
      face.setAttribute("x", String(x));
      face.setAttribute("y", String(y - height));
      face.setAttribute("width", String(ux * 0.6));
      face.setAttribute("height", String(Math.max(height, 0.5)));
      face.setAttribute("fill", `rgb(${red},${green},${blue})`);
      face.setAttribute("stroke", "#1b1b1b");
      face.setAttribute("stroke-width", "0.4");
      bar.append(face);
      const lid = document.createElementNS(SVG_NS, "polygon");
      const w = ux * 0.6;
      const dx = ux * 0.2;
      const dy = ux * 0.15;
      lid.setAttribute(
        "points",
        `${x},${y - height} ${x + dx},${y - height - dy} ` +
          `${x + w + dx},${y - height - dy} ${x + w},${y - height}`,
      );
      lid.setAttribute(
        "fill",
        `rgb(${Math.min(red + 30, 255)},${Math.min(green + 30, 255)},${Math.min(blue + 30, 255)})`,
      );
      lid.setAttribute("stroke", "#1b1b1b");
      lid.setAttribute("stroke-width", "0.4");
      bar.append(lid);
      svg.append(bar);
    }
  }
  host.append(svg);
}
