// SVG painting for the small-multiple grid. Everything is drawn in global
// canvas coordinates (the server's viewport space); CSS pixels are canvas
// units times SCALE, offset by ORIGIN for a little breathing room.

import type {
  FrameEvent,
  HighlightEvent,
  ViewPayload,
} from "./protocol.js";
import type { SampledFrame } from "./plan.js";

export const SCALE = 128; // css px per canvas unit
export const ORIGIN = -0.5; // canvas coordinate of the top-left corner
export const GRAY_35 = "#a6a6a6"; // grayed-out fill, 35% gray

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_R = 0.018;
const DIMMED_OPACITY = "0.3";

export interface Stage {
  svg: SVGSVGElement;
  viewLayer: SVGGElement;
  lassoLayer: SVGGElement;
  overlayLayer: SVGGElement;
  animationLayer: SVGGElement;
  status: HTMLDivElement;
}

function group(svg: SVGSVGElement, className: string): SVGGElement {
  const g = document.createElementNS(SVG_NS, "g") as SVGGElement;
  g.setAttribute("class", className);
  svg.appendChild(g);
  return g;
}

export function createStage(root: HTMLElement): Stage {
  const svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("class", "graphbridge-canvas");
  root.appendChild(svg);
  const stage: Stage = {
    svg,
    viewLayer: group(svg, "view-layer"),
    lassoLayer: group(svg, "lasso-layer"),
    overlayLayer: group(svg, "overlay-layer"),
    animationLayer: group(svg, "animation-layer"),
    status: document.createElement("div"),
  };
  stage.status.className = "status-bar";
  root.appendChild(stage.status);
  return stage;
}

function clear(el: Element): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

function line(
  layer: SVGGElement,
  x1: number,
  y1: number,
  x2: number,
  y2: number,
): SVGLineElement {
  const el = document.createElementNS(SVG_NS, "line") as SVGLineElement;
  el.setAttribute("x1", String(x1));
  el.setAttribute("y1", String(y1));
  el.setAttribute("x2", String(x2));
  el.setAttribute("y2", String(y2));
  layer.appendChild(el);
  return el;
}

function circle(
  layer: SVGGElement,
  cx: number,
  cy: number,
  r: number,
): SVGCircleElement {
  const el = document.createElementNS(SVG_NS, "circle") as SVGCircleElement;
  el.setAttribute("cx", String(cx));
  el.setAttribute("cy", String(cy));
  el.setAttribute("r", String(r));
  layer.appendChild(el);
  return el;
}

export function nodeGlobal(
  view: ViewPayload,
  node: { x: number; y: number },
): [number, number] {
  return [view.viewport[0] + node.x, view.viewport[1] + node.y];
}

export function renderViews(stage: Stage, views: ViewPayload[]): void {
  clear(stage.viewLayer);
  clear(stage.lassoLayer);
  clear(stage.overlayLayer);
  clear(stage.animationLayer);
  let maxX = 1;
  let maxY = 1;
  for (const view of views) {
    maxX = Math.max(maxX, view.viewport[2]);
    maxY = Math.max(maxY, view.viewport[3]);
  }
  const width = maxX - 2 * ORIGIN;
  const height = maxY - 2 * ORIGIN;
  stage.svg.setAttribute("viewBox", `${ORIGIN} ${ORIGIN} ${width} ${height}`);
  stage.svg.setAttribute("width", String(width * SCALE));
  stage.svg.setAttribute("height", String(height * SCALE));

  for (const view of views) {
    const g = document.createElementNS(SVG_NS, "g") as SVGGElement;
    g.setAttribute("class", "view");
    g.setAttribute("data-view-id", view.viewId);
    stage.viewLayer.appendChild(g);

    const [x0, y0, x1, y1] = view.viewport;
    const frame = document.createElementNS(SVG_NS, "rect");
    frame.setAttribute("class", "view-frame");
    frame.setAttribute("x", String(x0));
    frame.setAttribute("y", String(y0));
    frame.setAttribute("width", String(x1 - x0));
    frame.setAttribute("height", String(y1 - y0));
    frame.setAttribute("fill", "#ffffff");
    frame.setAttribute("stroke", "#999999");
    frame.setAttribute("stroke-width", "0.008");
    g.appendChild(frame);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("class", "view-label");
    label.setAttribute("x", String(x0 + 0.03));
    label.setAttribute("y", String(y0 - 0.04));
    label.setAttribute("font-size", "0.07");
    label.textContent = view.viewId;
    g.appendChild(label);

    const byId = new Map(view.nodes.map((n) => [n.id, n]));
    for (const edge of view.edges) {
      const a = byId.get(edge.source);
      const b = byId.get(edge.target);
      if (!a || !b) continue;
      const [ax, ay] = nodeGlobal(view, a);
      const [bx, by] = nodeGlobal(view, b);
      const el = line(g, ax, ay, bx, by);
      el.setAttribute("class", "edge");
      el.setAttribute("data-source", edge.source);
      el.setAttribute("data-target", edge.target);
      el.setAttribute("stroke", "#bbbbbb");
      el.setAttribute("stroke-width", "0.006");
    }
    for (const node of view.nodes) {
      const [gx, gy] = nodeGlobal(view, node);
      const el = circle(g, gx, gy, NODE_R);
      el.setAttribute("class", "node");
      el.setAttribute("data-id", node.id);
      el.setAttribute("data-community", node.community);
      el.setAttribute("fill", node.color);
      el.setAttribute("data-base-fill", node.color);
    }
  }
}

function viewGroup(stage: Stage, viewId: string): SVGGElement | null {
  return stage.viewLayer.querySelector(
    `g.view[data-view-id="${viewId}"]`,
  ) as SVGGElement | null;
}

function edgeKey(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

export function applyHighlight(stage: Stage, event: HighlightEvent): void {
  for (const section of event.views) {
    const g = viewGroup(stage, section.viewId);
    if (!g) continue;
    const nodes = new Set(section.nodes);
    const edges = new Set(section.edges.map(([a, b]) => edgeKey(a, b)));
    g.querySelectorAll("circle.node").forEach((el) => {
      if (nodes.has(el.getAttribute("data-id") ?? "")) {
        el.setAttribute("stroke", "#000000");
        el.setAttribute("stroke-width", "0.006");
      } else {
        el.removeAttribute("stroke");
        el.removeAttribute("stroke-width");
      }
    });
    g.querySelectorAll("line.edge").forEach((el) => {
      const key = edgeKey(
        el.getAttribute("data-source") ?? "",
        el.getAttribute("data-target") ?? "",
      );
      el.setAttribute("stroke", edges.has(key) ? "#555555" : "#bbbbbb");
    });
  }
}

// During a drag the source view keeps dimmed originals of the selection;
// the overlay carries the full-opacity copies.
export function dimSelection(
  stage: Stage,
  viewId: string,
  ids: Iterable<string>,
  dimmed: boolean,
): void {
  const g = viewGroup(stage, viewId);
  if (!g) return;
  for (const id of ids) {
    const el = g.querySelector(`circle.node[data-id="${id}"]`);
    if (!el) continue;
    if (dimmed) el.setAttribute("opacity", DIMMED_OPACITY);
    else el.removeAttribute("opacity");
  }
}

export function applyGraying(
  stage: Stage,
  viewId: string,
  grayedNodes: string[],
  grayedEdges: [string, string][],
): void {
  const g = viewGroup(stage, viewId);
  if (!g) return;
  const nodes = new Set(grayedNodes);
  const edges = new Set(grayedEdges.map(([a, b]) => edgeKey(a, b)));
  g.querySelectorAll("circle.node").forEach((el) => {
    const grayed = nodes.has(el.getAttribute("data-id") ?? "");
    el.setAttribute(
      "fill",
      grayed ? GRAY_35 : el.getAttribute("data-base-fill") ?? GRAY_35,
    );
  });
  g.querySelectorAll("line.edge").forEach((el) => {
    const key = edgeKey(
      el.getAttribute("data-source") ?? "",
      el.getAttribute("data-target") ?? "",
    );
    if (edges.has(key)) el.setAttribute("stroke", GRAY_35);
  });
}

export function clearGraying(stage: Stage): void {
  stage.viewLayer.querySelectorAll("circle.node").forEach((el) => {
    const base = el.getAttribute("data-base-fill");
    if (base) el.setAttribute("fill", base);
  });
  stage.viewLayer.querySelectorAll("line.edge").forEach((el) => {
    el.setAttribute("stroke", "#bbbbbb");
  });
}

export function drawLasso(stage: Stage, points: [number, number][]): void {
  clear(stage.lassoLayer);
  if (points.length < 2) return;
  const el = document.createElementNS(SVG_NS, "polyline");
  el.setAttribute("class", "lasso");
  el.setAttribute("points", points.map(([x, y]) => `${x},${y}`).join(" "));
  el.setAttribute("fill", "none");
  el.setAttribute("stroke", "#333333");
  el.setAttribute("stroke-width", "0.004");
  el.setAttribute("stroke-dasharray", "0.02 0.01");
  stage.lassoLayer.appendChild(el);
}

export function clearLasso(stage: Stage): void {
  clear(stage.lassoLayer);
}

export interface OverlayEntry {
  id: string;
  x: number;
  y: number;
  color: string;
}

export function showDragOverlay(
  stage: Stage,
  entries: OverlayEntry[],
  edges: [string, string][],
): void {
  let overlay = stage.overlayLayer.querySelector(
    "g.drag-overlay",
  ) as SVGGElement | null;
  if (!overlay) {
    overlay = document.createElementNS(SVG_NS, "g") as SVGGElement;
    overlay.setAttribute("class", "drag-overlay");
    stage.overlayLayer.appendChild(overlay);
  }
  clear(overlay);
  const byId = new Map(entries.map((e) => [e.id, e]));
  for (const [source, target] of edges) {
    const a = byId.get(source);
    const b = byId.get(target);
    if (!a || !b) continue;
    const el = line(overlay, a.x, a.y, b.x, b.y);
    el.setAttribute("class", "overlay-edge");
    el.setAttribute("data-source", source);
    el.setAttribute("data-target", target);
    el.setAttribute("stroke", "#555555");
    el.setAttribute("stroke-width", "0.006");
  }
  for (const entry of entries) {
    const el = circle(overlay, entry.x, entry.y, NODE_R);
    el.setAttribute("class", "overlay-node");
    el.setAttribute("data-id", entry.id);
    el.setAttribute("fill", entry.color);
  }
}

export function removeDragOverlay(stage: Stage): void {
  const overlay = stage.overlayLayer.querySelector("g.drag-overlay");
  if (overlay) overlay.remove();
}

export function overlayPresent(stage: Stage): boolean {
  return stage.overlayLayer.querySelector("g.drag-overlay") !== null;
}

export function renderSampledFrame(
  stage: Stage,
  frame: SampledFrame | FrameEvent,
): void {
  clear(stage.animationLayer);
  stage.animationLayer.setAttribute("data-progress", String(frame.progress));
  const byId = new Map(frame.nodes.map((n) => [n.id, n]));
  for (const edge of frame.edges) {
    const a = byId.get(edge.source);
    const b = byId.get(edge.target);
    if (!a || !b) continue;
    const el = line(stage.animationLayer, a.x, a.y, b.x, b.y);
    el.setAttribute("class", "anim-edge");
    el.setAttribute("data-source", edge.source);
    el.setAttribute("data-target", edge.target);
    el.setAttribute("stroke", "#555555");
    el.setAttribute("stroke-width", "0.006");
    el.setAttribute("stroke-opacity", String(edge.alpha));
  }
  for (const node of frame.nodes) {
    const el = circle(stage.animationLayer, node.x, node.y, NODE_R);
    el.setAttribute("class", "anim-node");
    el.setAttribute("data-id", node.id);
    el.setAttribute("fill", node.color);
    el.setAttribute("fill-opacity", String(node.alpha));
  }
}

export function clearAnimation(stage: Stage): void {
  clear(stage.animationLayer);
  stage.animationLayer.removeAttribute("data-progress");
}

export function setStatus(stage: Stage, text: string): void {
  stage.status.textContent = text;
}
