/** SVG rendering: rounded gray type boxes, task-colored weighted arrows. */

import type { GlobalViewGraph, GvEdge, LayerAssignment, TypeDetails } from "./api";
import { NODE_HEIGHT, NODE_WIDTH, breadthfirstLayout, type Point } from "./layout";
import type { ViewState } from "./state";

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_FILL = "#d3d3d3";
const NODE_STROKE = "#5f5f5f";
const MARGIN = 80;
const MIN_ZOOM = 0.2;
const MAX_ZOOM = 5;

export interface RenderCallbacks {
  onSelect(nodeId: string): void;
  onDiveIn(nodeId: string): void;
}

export function strokeWidth(weight: number): number {
  return 1 + Math.log(weight);
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    el.setAttribute(name, value);
  }
  return el;
}

function transformAttr(state: ViewState): string {
  const { x, y, k } = state.transform;
  return `translate(${x} ${y}) scale(${k})`;
}

function edgePath(from: Point, to: Point): string {
  if (from.x === to.x && from.y === to.y) {
    // Self loop: a small arc out of the right edge of the box.
    const r = NODE_WIDTH / 2;
    return `M ${from.x + r} ${from.y - 6} C ${from.x + r + 50} ${from.y - 40}, `
      + `${from.x + r + 50} ${from.y + 40}, ${from.x + r} ${from.y + 6}`;
  }
  const start = { x: from.x, y: from.y + NODE_HEIGHT / 2 };
  const end = { x: to.x, y: to.y - NODE_HEIGHT / 2 };
  return `M ${start.x} ${start.y} L ${end.x} ${end.y}`;
}

function arrowMarkers(edges: GvEdge[]): { defs: SVGDefsElement; ids: Map<string, string> } {
  const defs = svgElement("defs");
  const ids = new Map<string, string>();
  let index = 0;
  for (const edge of edges) {
    if (ids.has(edge.color)) continue;
    const id = `gv-arrow-${index++}`;
    ids.set(edge.color, id);
    const marker = svgElement("marker", {
      id,
      viewBox: "0 0 10 10",
      refX: "9",
      refY: "5",
      markerWidth: "7",
      markerHeight: "7",
      orient: "auto-start-reverse",
    });
    marker.appendChild(svgElement("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: edge.color }));
    defs.appendChild(marker);
  }
  return { defs, ids };
}

function attachPanZoom(svg: SVGSVGElement, viewport: SVGGElement, state: ViewState): void {
  let dragging = false;
  let lastX = 0;
  let lastY = 0;

  svg.addEventListener("mousedown", (event) => {
    if (event.button !== 0) return;
    dragging = true;
    lastX = event.clientX;
    lastY = event.clientY;
  });
  svg.addEventListener("mousemove", (event) => {
    if (!dragging) return;
    state.transform.x += event.clientX - lastX;
    state.transform.y += event.clientY - lastY;
    lastX = event.clientX;
    lastY = event.clientY;
    viewport.setAttribute("transform", transformAttr(state));
  });
  const stop = () => {
    dragging = false;
  };
  svg.addEventListener("mouseup", stop);
  svg.addEventListener("mouseleave", stop);

  svg.addEventListener("wheel", (event) => {
    event.preventDefault();
    const { x, y, k } = state.transform;
    const next = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, k * Math.exp(-event.deltaY * 0.001)));
    // Keep the point under the cursor stationary while scaling.
    const scale = next / k;
    state.transform = {
      x: event.offsetX - (event.offsetX - x) * scale,
      y: event.offsetY - (event.offsetY - y) * scale,
      k: next,
    };
    viewport.setAttribute("transform", transformAttr(state));
  }, { passive: false });
}

export function renderGlobalView(
  host: HTMLElement,
  graph: GlobalViewGraph,
  layers: LayerAssignment,
  state: ViewState,
  callbacks: RenderCallbacks,
): SVGSVGElement {
  host.replaceChildren();
  const positions = breadthfirstLayout(graph.nodes, layers);

  const xs = [...positions.values()].map((p) => p.x);
  const ys = [...positions.values()].map((p) => p.y);
  const minX = xs.length ? Math.min(...xs) - NODE_WIDTH / 2 - MARGIN : 0;
  const maxX = xs.length ? Math.max(...xs) + NODE_WIDTH / 2 + MARGIN : 400;
  const minY = ys.length ? Math.min(...ys) - NODE_HEIGHT / 2 - MARGIN : 0;
  const maxY = ys.length ? Math.max(...ys) + NODE_HEIGHT / 2 + MARGIN : 300;

  const svg = svgElement("svg", {
    class: "gv-canvas",
    viewBox: `${minX} ${minY} ${maxX - minX} ${maxY - minY}`,
    width: "100%",
    height: "100%",
  });
  const { defs, ids } = arrowMarkers(graph.edges);
  svg.appendChild(defs);

  const viewport = svgElement("g", {
    class: "gv-viewport",
    transform: transformAttr(state),
  });
  svg.appendChild(viewport);

  const edgeGroup = svgElement("g", { class: "gv-edges" });
  for (const edge of graph.edges) {
    const from = positions.get(edge.source);
    const to = positions.get(edge.target);
    if (from === undefined || to === undefined) continue;
    const path = svgElement("path", {
      class: "gv-edge",
      d: edgePath(from, to),
      fill: "none",
      stroke: edge.color,
      "stroke-width": String(strokeWidth(edge.weight)),
      "marker-end": `url(#${ids.get(edge.color)})`,
      "data-task": edge.task,
      "data-weight": String(edge.weight),
    });
    edgeGroup.appendChild(path);
  }
  viewport.appendChild(edgeGroup);

  const nodeGroup = svgElement("g", { class: "gv-nodes" });
  for (const node of graph.nodes) {
    const center = positions.get(node.id);
    if (center === undefined) continue;
    const g = svgElement("g", {
      class: "gv-node" + (state.selectedNode === node.id ? " gv-selected" : ""),
      transform: `translate(${center.x - NODE_WIDTH / 2} ${center.y - NODE_HEIGHT / 2})`,
      "data-node-id": node.id,
      "data-layer": String(layers[node.id] ?? ""),
      "data-y": String(center.y),
    });
    g.appendChild(svgElement("rect", {
      rx: "10",
      ry: "10",
      width: String(NODE_WIDTH),
      height: String(NODE_HEIGHT),
      fill: NODE_FILL,
      stroke: NODE_STROKE,
    }));
    const text = svgElement("text", {
      x: String(NODE_WIDTH / 2),
      y: String(NODE_HEIGHT / 2),
      "text-anchor": "middle",
      "dominant-baseline": "central",
    });
    text.textContent = node.label;
    g.appendChild(text);

    g.addEventListener("click", () => {
      state.selectedNode = node.id;
      for (const other of nodeGroup.querySelectorAll(".gv-selected")) {
        other.classList.remove("gv-selected");
      }
      g.classList.add("gv-selected");
      callbacks.onSelect(node.id);
    });
    g.addEventListener("dblclick", () => callbacks.onDiveIn(node.id));
    nodeGroup.appendChild(g);
  }
  viewport.appendChild(nodeGroup);

  attachPanZoom(svg, viewport, state);
  host.appendChild(svg);
  return svg;
}

export function renderErrorBanner(host: HTMLElement, message: string): void {
  host.replaceChildren();
  const banner = document.createElement("div");
  banner.className = "gv-banner";
  banner.setAttribute("role", "alert");
  banner.textContent = message;
  host.appendChild(banner);
}

export function clearBanner(host: HTMLElement): void {
  host.replaceChildren();
}

export function renderTypePanel(host: HTMLElement, details: TypeDetails): void {
  host.replaceChildren();
  const title = document.createElement("h2");
  title.textContent = details.full_name;
  host.appendChild(title);

  const path = document.createElement("code");
  path.className = "gv-source-path";
  path.textContent = details.source_path ?? "(no source recorded)";
  host.appendChild(path);

  const list = document.createElement("ul");
  list.className = "gv-hot-lines";
  for (const line of details.hot_lines) {
    const item = document.createElement("li");
    item.dataset.line = String(line.line_number);
    item.textContent = `line ${line.line_number}: ${line.breakpoint_count} breakpoints`;
    list.appendChild(item);
  }
  host.appendChild(list);
}

export function renderTypePanelError(host: HTMLElement, message: string): void {
  host.replaceChildren();
  const notice = document.createElement("p");
  notice.className = "gv-panel-error";
  notice.textContent = message;
  host.appendChild(notice);
}
