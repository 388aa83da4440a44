// SVG renderer: a thin, stateless projection of (scene, positions) onto the
// DOM. All interaction is delegated to the callbacks.

import { Point } from "./layout.js";
import { Scene, SceneNode } from "./scene.js";

export interface RenderCallbacks {
  onNodeClick: (node: SceneNode) => void;
  onNodeDoubleClick: (node: SceneNode) => void;
  onHullDoubleClick: (cluster: string) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

function nodeRadius(node: SceneNode): number {
  return node.kind === "cluster" ? 10 + 3 * Math.sqrt(node.size) : 7;
}

export function renderScene(
  svg: SVGSVGElement,
  scene: Scene,
  positions: Map<string, Point>,
  callbacks: RenderCallbacks,
): void {
  svg.textContent = "";

  for (const hull of scene.hulls) {
    const points = hull.members
      .map((m) => positions.get(m))
      .filter((p): p is Point => p !== undefined);
    if (points.length === 0) continue;
    const xs = points.map((p) => p.x);
    const ys = points.map((p) => p.y);
    const pad = 26;
    const rect = el("rect", {
      x: String(Math.min(...xs) - pad),
      y: String(Math.min(...ys) - pad),
      width: String(Math.max(...xs) - Math.min(...xs) + 2 * pad),
      height: String(Math.max(...ys) - Math.min(...ys) + 2 * pad),
      rx: "14",
      class: "hull",
    });
    rect.addEventListener("dblclick", () => callbacks.onHullDoubleClick(hull.cluster));
    svg.appendChild(rect);
    const tag = el("text", {
      x: String(Math.min(...xs) - pad + 6),
      y: String(Math.min(...ys) - pad + 14),
      class: "hull-label",
    });
    tag.textContent = hull.label;
    svg.appendChild(tag);
  }

  for (const edge of scene.edges) {
    const a = positions.get(edge.source);
    const b = positions.get(edge.target);
    if (a === undefined || b === undefined) continue;
    const line = el("line", {
      x1: String(a.x),
      y1: String(a.y),
      x2: String(b.x),
      y2: String(b.y),
      class: `edge${edge.sEdge ? " skeleton" : ""}${edge.onPath ? " on-path" : ""}`,
      "stroke-width": String(1 + 4 * edge.value),
    });
    const title = el("title", {});
    title.textContent = `${edge.source} -- ${edge.target}: ${edge.value.toFixed(3)}`;
    line.appendChild(title);
    svg.appendChild(line);
  }

  for (const node of scene.nodes) {
    const p = positions.get(node.id);
    if (p === undefined) continue;
    const group = el("g", { class: "node-group" });
    const circle = el("circle", {
      cx: String(p.x),
      cy: String(p.y),
      r: String(nodeRadius(node)),
      class:
        `node ${node.kind}` +
        (node.selected ? " selected" : "") +
        (node.onPath ? " on-path" : ""),
    });
    group.appendChild(circle);
    const text = el("text", {
      x: String(p.x),
      y: String(p.y - nodeRadius(node) - 4),
      class: "node-label",
      "text-anchor": "middle",
    });
    text.textContent = node.label;
    group.appendChild(text);
    group.addEventListener("click", () => callbacks.onNodeClick(node));
    group.addEventListener("dblclick", (event) => {
      event.preventDefault();
      callbacks.onNodeDoubleClick(node);
    });
    svg.appendChild(group);
  }
}
