/** Pure transforms from gateway responses to view models.
 *
 * Nothing here touches the DOM or the network, so every render decision
 * the charts make is testable against recorded gateway payloads.
 */

import type {
  ApiErrorBody,
  RasterPayload,
  SeriesPayload,
} from "./types.js";

export interface Bar {
  label: string;
  value: number;
}

export interface BarChartModel {
  bars: Bar[];
  max: number;
  /** Charts cap direct display at 100 labels; beyond that they scroll. */
  scroll: boolean;
}

export const SCROLL_THRESHOLD = 100;

/** Distribution dicts arrive ordered (labels ascending for nodes,
 * descending lexicographic for states); JSON parsing preserves it. */
export function barChart(distribution: Record<string, number>): BarChartModel {
  const bars = Object.entries(distribution).map(([label, value]) => ({
    label: shortLabel(label),
    value,
  }));
  const max = bars.reduce((m, b) => Math.max(m, b.value), 0);
  return { bars, max, scroll: bars.length > SCROLL_THRESHOLD };
}

/** "|7,1>" is just node 7 to a human; state strings pass through. */
export function shortLabel(key: string): string {
  const single = /^\|(\d+),1>$/.exec(key);
  return single !== null ? single[1]! : key;
}

/** Probability of each node label in order, from a |label,1>-keyed dict. */
export function nodeProbabilities(
  distribution: Record<string, number>,
): number[] {
  const out: number[] = [];
  for (const [key, value] of Object.entries(distribution)) {
    const m = /^\|(\d+),1>$/.exec(key);
    if (m !== null) out[Number(m[1]) - 1] = value;
  }
  return out;
}

export interface SeriesLine {
  key: string;
  points: number[];
}

export interface SeriesModel {
  z: number[];
  lines: SeriesLine[];
  max: number;
}

export function seriesModel(series: SeriesPayload): SeriesModel {
  const lines = Object.entries(series.values).map(([key, points]) => ({
    key,
    points,
  }));
  const max = lines.reduce(
    (m, l) => l.points.reduce((mm, p) => Math.max(mm, p), m),
    0,
  );
  return { z: series.z_cm, lines, max };
}

export interface RasterModel {
  rows: number;
  cols: number;
  /** Row-major, row 0 at the bottom of the plotted window. */
  values: Float64Array;
  max: number;
  extent: number[];
}

export function decodeRaster(raster: RasterPayload): RasterModel {
  if (raster.dtype !== "<f8") {
    throw new Error(`unsupported raster dtype ${raster.dtype}`);
  }
  const [rows, cols] = raster.shape;
  if (rows === undefined || cols === undefined) {
    throw new Error("raster shape must be two-dimensional");
  }
  const bytes = decodeBase64(raster.grid_b64);
  const values = new Float64Array(rows * cols);
  const view = new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength);
  for (let i = 0; i < values.length; i += 1) {
    values[i] = view.getFloat64(i * 8, true);
  }
  let max = 0;
  for (const v of values) max = Math.max(max, v);
  return { rows, cols, values, max, extent: raster.extent_um };
}

declare const Buffer:
  | { from(data: string, encoding: string): Uint8Array }
  | undefined;

function decodeBase64(b64: string): Uint8Array {
  if (typeof atob === "function") {
    const text = atob(b64);
    const bytes = new Uint8Array(text.length);
    for (let i = 0; i < text.length; i += 1) bytes[i] = text.charCodeAt(i);
    return bytes;
  }
  if (typeof Buffer !== "undefined" && Buffer !== undefined) {
    return new Uint8Array(Buffer.from(b64, "base64"));
  }
  throw new Error("no base64 decoder available");
}

export interface CorrelationModel {
  n: number;
  rows: number[][];
  max: number;
}

export function correlationModel(rows: number[][]): CorrelationModel {
  const max = rows.reduce(
    (m, row) => row.reduce((mm, v) => Math.max(mm, v), m),
    0,
  );
  return { n: rows.length, rows, max };
}

/** A 4xx body becomes one banner message; results never render for it. */
export function bannerMessage(status: number, body: ApiErrorBody): string {
  if (body.message !== undefined) {
    return `${body.error}: ${body.message}`;
  }
  if (Array.isArray(body.detail)) {
    const parts = body.detail
      .map((d) => {
        const at = Array.isArray(d.loc) ? d.loc.slice(1).join(".") : "";
        return at.length > 0 ? `${at}: ${d.msg ?? "invalid"}` : d.msg ?? "invalid";
      })
      .slice(0, 3);
    return `${body.error}: ${parts.join("; ")}`;
  }
  return `${body.error} (HTTP ${status})`;
}
