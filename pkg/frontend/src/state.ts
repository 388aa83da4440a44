// View state and its reducer. The scene is always derived from
// (fetched artifacts, ViewState), so replaying a recorded action script
// against the same artifacts reproduces the same scene graph.

import { GraphView, isCluster } from "./types.js";

export interface ViewState {
  graphId: string | null;
  corpusId: string | null;
  /** active partition level, 1..level_count */
  level: number;
  /** unfolded cluster ids at the active level, kept sorted */
  unfolded: string[];
  /** selected visible node id */
  selected: string | null;
  /** unit refs of the highlighted path, in order */
  path: string[] | null;
  /** controls' pending values, applied on rebuild */
  pendingThreshold: number;
  pendingLevels: number | null;
}

export type Action =
  | { type: "unfold"; cluster: string }
  | { type: "fold"; cluster: string }
  | { type: "select"; node: string | null }
  | { type: "setLevel"; level: number }
  | { type: "setPath"; nodes: string[] | null }
  | { type: "pendingThreshold"; value: number }
  | { type: "pendingLevels"; value: number | null }
  | { type: "swapGraph"; view: GraphView };

export function initialState(view: GraphView): ViewState {
  return {
    graphId: view.graph_id,
    corpusId: view.corpus_id,
    level: Math.max(view.level_count, 1),
    unfolded: [],
    selected: null,
    path: null,
    pendingThreshold: view.threshold,
    pendingLevels: view.level_count,
  };
}

function levelClusters(view: GraphView, level: number): Set<string> {
  const ids = new Set<string>();
  for (const node of view.nodes) {
    if (isCluster(node) && node.level === level) ids.add(node.id);
  }
  return ids;
}

/** Visible stand-in for a node at the active level: the unit itself when its
 * cluster is unfolded, otherwise the cluster. */
export function representative(
  view: GraphView,
  state: ViewState,
  nodeId: string,
): string | null {
  const node = view.nodes.find((n) => n.id === nodeId);
  if (node === undefined) return null;
  if (isCluster(node)) {
    if (node.level === state.level) return node.id;
    const base = node.base_members[0];
    return base === undefined ? null : representative(view, state, base);
  }
  const cluster = node.membership[String(state.level)];
  if (cluster === undefined) return null;
  return state.unfolded.includes(cluster) ? nodeId : cluster;
}

export function reduce(view: GraphView, state: ViewState, action: Action): ViewState {
  switch (action.type) {
    case "unfold": {
      if (!levelClusters(view, state.level).has(action.cluster)) return state;
      if (state.unfolded.includes(action.cluster)) return state;
      return { ...state, unfolded: [...state.unfolded, action.cluster].sort() };
    }
    case "fold": {
      if (!state.unfolded.includes(action.cluster)) return state;
      const unfolded = state.unfolded.filter((c) => c !== action.cluster);
      const selected =
        state.selected === null
          ? null
          : representative(view, { ...state, unfolded }, state.selected);
      return { ...state, unfolded, selected };
    }
    case "select":
      return { ...state, selected: action.node };
    case "setLevel": {
      const level = Math.min(Math.max(action.level, 1), Math.max(view.level_count, 1));
      if (level === state.level) return state;
      const next = { ...state, level, unfolded: [] as string[] };
      const selected =
        state.selected === null ? null : representative(view, next, state.selected);
      return { ...next, selected };
    }
    case "setPath":
      return { ...state, path: action.nodes };
    case "pendingThreshold":
      return { ...state, pendingThreshold: action.value };
    case "pendingLevels":
      return { ...state, pendingLevels: action.value };
    case "swapGraph":
      return {
        ...initialState(action.view),
        pendingThreshold: state.pendingThreshold,
        pendingLevels: state.pendingLevels,
      };
  }
}

export function applyScript(
  view: GraphView,
  state: ViewState,
  actions: Action[],
): ViewState {
  return actions.reduce((s, action) => reduce(view, s, action), state);
}
