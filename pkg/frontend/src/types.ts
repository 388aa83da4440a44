// Payload shapes of the assograph HTTP API. Field names mirror the server
// exactly; everything displayed in the UI is traceable to one of these.

export interface UnitNode {
  id: string;
  kind: "author" | "term" | "unit";
  label: string;
  membership: Record<string, string>;
}

export interface ClusterNode {
  id: string;
  kind: "cluster";
  level: number;
  label: string;
  label_unit: string;
  external_links: number;
  members: string[];
  base_members: string[];
  size: number;
  parent: string | null;
}

export type ViewNode = UnitNode | ClusterNode;

export interface ViewEdge {
  source: string;
  target: string;
  value: number;
  level: number;
  s_edge: boolean;
}

export interface GraphView {
  mode: string;
  threshold: number;
  level_count: number;
  capped: boolean;
  nodes: ViewNode[];
  edges: ViewEdge[];
  doc_index: Record<string, string[]>;
  graph_id: string | null;
  corpus_id: string | null;
}

export interface ClusterMember {
  id: string;
  label: string;
}

export interface ClusterInternalEdge {
  source: string;
  target: string;
  value: number;
  s_edge: boolean;
}

export interface ClusterBoundaryEdge {
  source: string;
  target: string;
  target_cluster: string | null;
  value: number;
}

export interface ClusterDetail {
  cluster: string;
  level: number;
  members: ClusterMember[];
  internal_edges: ClusterInternalEdge[];
  boundary_edges: ClusterBoundaryEdge[];
}

export interface PathResponse {
  found: boolean;
  nodes: string[] | null;
  bottleneck: number | null;
}

export interface UnitRef {
  id: string;
  kind: string;
  label: string;
}

export interface DocumentPayload {
  id: string;
  title: string | null;
  year: number | null;
  authors: string[];
  keywords: string[] | null;
  abstract: string | null;
  tags: string[] | null;
  units: UnitRef[];
}

export interface UnitDocumentsResponse {
  unit: string;
  label: string;
  kind: string;
  documents: DocumentPayload[];
}

export interface BuildRequest {
  mode: string;
  threshold: number;
  levels: number | null;
}

export interface BuildResponse {
  graph_id: string;
  corpus_id: string;
  mode: string;
  threshold: number;
  levels: number;
  capped: boolean;
}

export function isCluster(node: ViewNode): node is ClusterNode {
  return node.kind === "cluster";
}
