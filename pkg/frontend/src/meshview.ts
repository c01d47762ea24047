/** Mesh diagram for the boson sampling tab.
 *
 * Splitter sites come from GET /mesh/layout. Shift+left click selects a
 * splitter for the parameter panel, right click toggles its badge. Red
 * markers on the left edge are injection channels: left click adds a
 * photon, right click removes one. Badges show theta/phi to two decimals.
 */

import { displayAngle } from "./pi.js";
import type { MeshSite, SplitterBody } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface MeshCallbacks {
  onSelectSplitter(order: number): void;
  onToggleBadge(order: number): void;
  onChannelClick(channel: number, kind: "add" | "remove"): void;
}

export interface MeshViewModel {
  modes: number;
  sites: MeshSite[];
  parameters: Map<number, SplitterBody>;
  occupations: readonly number[];
  selected: number | null;
  showBadges: boolean;
  hiddenBadges: Set<number>;
}

export function renderMesh(
  host: HTMLElement,
  model: MeshViewModel,
  callbacks: MeshCallbacks,
): void {
  while (host.firstChild !== null) host.removeChild(host.firstChild);
  const maxX = model.sites.reduce((m, s) => Math.max(m, s.x), 1);
  const w = 560;
  const h = Math.max(40 * model.modes + 20, 120);
  const left = 70;
  const laneGap = (h - 40) / Math.max(model.modes - 1, 1);
  const colGap = (w - left - 40) / Math.max(maxX + 1, 1);
  const laneY = (mode: number) => 20 + (mode - 1) * laneGap;
  const siteX = (x: number) => left + x * colGap + colGap / 2;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${w} ${h}`);
  svg.setAttribute("class", "mesh-plot");

  for (let mode = 1; mode <= model.modes; mode += 1) {
    const lane = document.createElementNS(SVG_NS, "line");
    lane.setAttribute("x1", String(left - 10));
    lane.setAttribute("y1", String(laneY(mode)));
    lane.setAttribute("x2", String(w - 16));
    lane.setAttribute("y2", String(laneY(mode)));
    lane.setAttribute("class", "mesh-lane");
    svg.append(lane);

    const marker = document.createElementNS(SVG_NS, "circle");
    marker.setAttribute("cx", String(left - 26));
    marker.setAttribute("cy", String(laneY(mode)));
    marker.setAttribute("r", "8");
    marker.setAttribute("class", "inject-marker");
    const channel = mode - 1;
    marker.addEventListener("click", () =>
      callbacks.onChannelClick(channel, "add"),
    );
    marker.addEventListener("contextmenu", (ev) => {
      ev.preventDefault();
      callbacks.onChannelClick(channel, "remove");
    });
    svg.append(marker);

    const count = document.createElementNS(SVG_NS, "text");
    count.setAttribute("x", String(left - 26));
    count.setAttribute("y", String(laneY(mode) + 3.5));
    count.setAttribute("text-anchor", "middle");
    count.setAttribute("class", "inject-count");
    count.textContent = String(model.occupations[channel] ?? 0);
    svg.append(count);
  }

  for (const site of model.sites) {
    const x = siteX(site.x);
    const y1 = laneY(site.m);
    const y2 = laneY(site.n);
    const rung = document.createElementNS(SVG_NS, "line");
    rung.setAttribute("x1", String(x));
    rung.setAttribute("y1", String(y1));
    rung.setAttribute("x2", String(x));
    rung.setAttribute("y2", String(y2));
    rung.setAttribute(
      "class",
      site.order === model.selected ? "mesh-bs selected" : "mesh-bs",
    );
    rung.addEventListener("click", (ev) => {
      if (ev.shiftKey) callbacks.onSelectSplitter(site.order);
    });
    rung.addEventListener("contextmenu", (ev) => {
      ev.preventDefault();
      callbacks.onToggleBadge(site.order);
    });
    svg.append(rung);

    const param = model.parameters.get(site.order);
    const configured = param !== undefined && (param.theta !== 0 || param.phi !== 0);
    if (configured) {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(x));
      dot.setAttribute("cy", String((y1 + y2) / 2));
      dot.setAttribute("r", "4");
      dot.setAttribute("class", "mesh-configured");
      svg.append(dot);
    }
    const badgeOn = model.showBadges !== model.hiddenBadges.has(site.order);
    if (badgeOn) {
      const badge = document.createElementNS(SVG_NS, "text");
      badge.setAttribute("x", String(x + 4));
      badge.setAttribute("y", String((y1 + y2) / 2 - 4));
      badge.setAttribute("class", "mesh-badge");
      badge.textContent =
        param === undefined
          ? `#${site.order}`
          : `#${site.order} θ=${displayAngle(param.theta)} φ=${displayAngle(param.phi)}`;
      svg.append(badge);
    }
  }
  host.append(svg);
}
