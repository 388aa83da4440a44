// Small deterministic spring embedder: nodes repel, edges pull with a rest
// length that shrinks as the association value grows. Deterministic for a
// given scene, so replayed interactions draw identical maps.

import { Scene } from "./scene.js";

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations: number;
  seed: number;
}

export const DEFAULT_LAYOUT: LayoutOptions = {
  width: 900,
  height: 600,
  iterations: 250,
  seed: 42,
};

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function hashString(text: string): number {
  let h = 2166136261;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

export function layoutScene(
  scene: Scene,
  options: LayoutOptions = DEFAULT_LAYOUT,
): Map<string, Point> {
  const { width, height, iterations, seed } = options;
  const positions = new Map<string, Point>();
  const ids = scene.nodes.map((n) => n.id);
  for (const id of ids) {
    const rand = mulberry32(seed ^ hashString(id));
    positions.set(id, {
      x: (0.1 + 0.8 * rand()) * width,
      y: (0.1 + 0.8 * rand()) * height,
    });
  }
  if (ids.length <= 1) return positions;

  const area = width * height;
  const k = Math.sqrt(area / ids.length);
  const inHull = new Map<string, string>();
  for (const hull of scene.hulls) {
    for (const member of hull.members) inHull.set(member, hull.cluster);
  }

  for (let round = 0; round < iterations; round++) {
    const temperature = 0.1 * Math.min(width, height) * (1 - round / iterations);
    const force = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = ids[i]!;
        const b = ids[j]!;
        const pa = positions.get(a)!;
        const pb = positions.get(b)!;
        const dx = pa.x - pb.x;
        const dy = pa.y - pb.y;
        const dist = Math.max(Math.hypot(dx, dy), 0.01);
        const repulsion = (k * k) / dist;
        const fx = (dx / dist) * repulsion;
        const fy = (dy / dist) * repulsion;
        force.get(a)!.x += fx;
        force.get(a)!.y += fy;
        force.get(b)!.x -= fx;
        force.get(b)!.y -= fy;
      }
    }

    for (const edge of scene.edges) {
      const pa = positions.get(edge.source);
      const pb = positions.get(edge.target);
      if (pa === undefined || pb === undefined) continue;
      const dx = pa.x - pb.x;
      const dy = pa.y - pb.y;
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      // stronger associations attract harder, so they settle closer;
      // cluster co-membership tightens the hull further
      const sameHull =
        inHull.get(edge.source) !== undefined &&
        inHull.get(edge.source) === inHull.get(edge.target);
      const weight = 0.4 + edge.value + (sameHull ? 0.4 : 0);
      const pull = ((dist * dist) / k) * weight;
      const fx = (dx / dist) * pull;
      const fy = (dy / dist) * pull;
      force.get(edge.source)!.x -= fx;
      force.get(edge.source)!.y -= fy;
      force.get(edge.target)!.x += fx;
      force.get(edge.target)!.y += fy;
    }

    for (const id of ids) {
      const p = positions.get(id)!;
      const f = force.get(id)!;
      // gentle centering keeps disconnected pieces on canvas
      f.x += (width / 2 - p.x) * 0.03;
      f.y += (height / 2 - p.y) * 0.03;
      const magnitude = Math.max(Math.hypot(f.x, f.y), 0.01);
      const step = Math.min(magnitude, temperature);
      p.x += (f.x / magnitude) * step;
      p.y += (f.y / magnitude) * step;
      p.x = Math.min(Math.max(p.x, 20), width - 20);
      p.y = Math.min(Math.max(p.y, 20), height - 20);
    }
  }
  return positions;
}
