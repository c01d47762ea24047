/** Build CSV text from cached responses for the download buttons.
 *
 * Numbers print as the shortest decimal that round-trips a float64,
 * with a ".0" suffix on whole values, so files re-import to exactly
 * the same numbers and look like the engine's own writers.
 */

import { nodeProbabilities } from "./model.js";
import type { BoardNode } from "./state.js";
import type { ComplexMatrix, SeriesPayload, SplitterBody } from "./types.js";

function fmt(x: number): string {
  if (Number.isInteger(x) && Math.abs(x) < 1e16) return x.toFixed(1);
  return String(x);
}

function quote(cell: string): string {
  return /[",\n]/.test(cell) ? `"${cell.replace(/"/g, '""')}"` : cell;
}

function lines(rows: string[][]): string {
  return rows.map((r) => r.map(quote).join(",")).join("\n") + "\n";
}

/** label,x,y per node, plus a stochastic 0/1 column when any node opts out. */
export function positionsCsv(nodes: readonly BoardNode[]): string {
  const flagged = nodes.some((n) => !n.stochastic);
  return lines(
    nodes.map((n, i) => {
      const row = [String(i + 1), fmt(n.x), fmt(n.y)];
      if (flagged) row.push(n.stochastic ? "1" : "0");
      return row;
    }),
  );
}

/** One probability per row in node-label order, no header. */
export function resultsCsv(distribution: Record<string, number>): string {
  return lines(nodeProbabilities(distribution).map((p) => [fmt(p)]));
}

/** state,probability with a header, in the server's enumeration order. */
export function distributionCsv(
  distribution: Record<string, number>,
): string {
  return lines([
    ["state", "probability"],
    ...Object.entries(distribution).map(([k, v]) => [k, fmt(v)]),
  ]);
}

/** z,<key...> header then one row per propagation sample. */
export function seriesCsv(series: SeriesPayload): string {
  const keys = Object.keys(series.values);
  const rows = series.z_cm.map((z, i) => [
    fmt(z),
    ...keys.map((k) => fmt(series.values[k]![i]!)),
  ]);
  return lines([["z", ...keys], ...rows]);
}

/** M rows of 2M cells, real and imaginary parts interleaved. */
export function unitaryCsv(u: ComplexMatrix): string {
  return lines(
    u.real.map((row, i) =>
      row.flatMap((re, j) => [fmt(re), fmt(u.imag[i]![j]!)]),
    ),
  );
}

/** order,theta,phi with a header, ordered by splitter number. */
export function parametersCsv(params: readonly SplitterBody[]): string {
  const sorted = [...params].sort((a, b) => a.order - b.order);
  return lines([
    ["order", "theta", "phi"],
    ...sorted.map((p) => [String(p.order), fmt(p.theta), fmt(p.phi)]),
  ]);
}

/** Plain numeric grid, one matrix row per line. */
export function gridCsv(rows: readonly number[][]): string {
  return lines(rows.map((row) => row.map((v) => fmt(v))));
}
