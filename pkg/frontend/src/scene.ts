// Pure scene derivation. Folded clusters appear as single nodes sized by
// member count; unfolded clusters contribute their member units inside a
// hull, with internal edges taken from the cluster endpoint's response and
// boundary edges re-attached to whichever endpoint is visible.

import { ClusterDetail, GraphView, isCluster, ViewNode } from "./types.js";
import { representative, ViewState } from "./state.js";

export interface SceneNode {
  id: string;
  kind: "cluster" | "unit";
  label: string;
  size: number;
  cluster: string | null;
  selected: boolean;
  onPath: boolean;
}

export interface SceneEdge {
  source: string;
  target: string;
  value: number;
  sEdge: boolean;
  onPath: boolean;
}

export interface SceneHull {
  cluster: string;
  label: string;
  members: string[];
}

export interface Scene {
  level: number;
  nodes: SceneNode[];
  edges: SceneEdge[];
  hulls: SceneHull[];
}

function edgeKey(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

export function deriveScene(
  view: GraphView,
  details: Record<string, ClusterDetail>,
  state: ViewState,
): Scene {
  const byId = new Map<string, ViewNode>(view.nodes.map((n) => [n.id, n]));
  const clusters = view.nodes
    .filter(isCluster)
    .filter((n) => n.level === state.level)
    .sort((a, b) => a.id.localeCompare(b.id));
  const unfolded = new Set(
    state.unfolded.filter((id) => id in details && byId.has(id)),
  );

  const pathReprs = new Set<string>();
  const pathPairs = new Set<string>();
  if (state.path !== null) {
    const reprs = state.path
      .map((unit) => representative(view, state, unit))
      .filter((r): r is string => r !== null);
    for (const r of reprs) pathReprs.add(r);
    for (let i = 1; i < reprs.length; i++) {
      const a = reprs[i - 1]!;
      const b = reprs[i]!;
      if (a !== b) pathPairs.add(edgeKey(a, b));
    }
  }

  const nodes: SceneNode[] = [];
  const hulls: SceneHull[] = [];
  for (const cluster of clusters) {
    if (unfolded.has(cluster.id)) {
      hulls.push({ cluster: cluster.id, label: cluster.label, members: [...cluster.base_members] });
      for (const member of cluster.base_members) {
        const unit = byId.get(member);
        nodes.push({
          id: member,
          kind: "unit",
          label: unit === undefined ? member : unit.label,
          size: 1,
          cluster: cluster.id,
          selected: state.selected === member,
          onPath: pathReprs.has(member),
        });
      }
    } else {
      nodes.push({
        id: cluster.id,
        kind: "cluster",
        label: cluster.label,
        size: cluster.size,
        cluster: null,
        selected: state.selected === cluster.id,
        onPath: pathReprs.has(cluster.id),
      });
    }
  }

  const edges = new Map<string, SceneEdge>();
  const put = (source: string, target: string, value: number, sEdge: boolean) => {
    if (source === target) return;
    const key = edgeKey(source, target);
    const existing = edges.get(key);
    if (existing === undefined || value > existing.value) {
      const [a, b] = source < target ? [source, target] : [target, source];
      edges.set(key, {
        source: a,
        target: b,
        value,
        sEdge,
        onPath: pathPairs.has(key),
      });
    }
  };

  // reduced edges between two still-folded clusters
  for (const edge of view.edges) {
    if (edge.level !== state.level) continue;
    if (unfolded.has(edge.source) || unfolded.has(edge.target)) continue;
    put(edge.source, edge.target, edge.value, false);
  }

  for (const id of [...unfolded].sort()) {
    const detail = details[id]!;
    for (const internal of detail.internal_edges) {
      put(internal.source, internal.target, internal.value, internal.s_edge);
    }
    for (const boundary of detail.boundary_edges) {
      const targetVisible =
        boundary.target_cluster !== null && unfolded.has(boundary.target_cluster)
          ? boundary.target
          : boundary.target_cluster;
      if (targetVisible === null) continue;
      put(boundary.source, targetVisible, boundary.value, false);
    }
  }

  const sortedEdges = [...edges.values()].sort((a, b) =>
    a.source === b.source ? a.target.localeCompare(b.target) : a.source.localeCompare(b.source),
  );
  return { level: state.level, nodes, edges: sortedEdges, hulls };
}

/** Canonical serialization used to compare scenes in tests and replays. */
export function sceneSignature(scene: Scene): string {
  return JSON.stringify(scene);
}
