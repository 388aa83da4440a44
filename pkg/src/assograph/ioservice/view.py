"""The serialized view of a clustered graph consumed by exports and the UI.

Unit nodes are rendered as ``u<id>``, cluster node ids keep their stable
cluster ids. Values stay at artifact precision here; human-facing exports
round for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..analysis import label_clusters
from ..cpcl import ClusteringResult
from ..errors import AssographError
from ..graph import ThresholdedGraph
from .artifacts import canonical_json
import json


def unit_ref(vertex) -> str:
    return f"u{vertex}"


@dataclass(frozen=True)
class GraphView:
    mode: str
    threshold: float
    level_count: int
    capped: bool
    nodes: tuple[dict, ...]
    edges: tuple[dict, ...]
    doc_index: dict[str, list[str]] = field(default_factory=dict)
    graph_id: str | None = None
    corpus_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "threshold": self.threshold,
            "level_count": self.level_count,
            "capped": self.capped,
            "nodes": list(self.nodes),
            "edges": list(self.edges),
            "doc_index": self.doc_index,
            "graph_id": self.graph_id,
            "corpus_id": self.corpus_id,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "GraphView":
        return cls(
            mode=data["mode"],
            threshold=data["threshold"],
            level_count=data["level_count"],
            capped=data["capped"],
            nodes=tuple(data["nodes"]),
            edges=tuple(data["edges"]),
            doc_index=data["doc_index"],
            graph_id=data.get("graph_id"),
            corpus_id=data.get("corpus_id"),
        )

    @classmethod
    def from_json(cls, text: str) -> "GraphView":
        return cls.from_dict(json.loads(text))

    def clusters(self) -> list[dict]:
        return [n for n in self.nodes if n["kind"] == "cluster"]

    def units(self) -> list[dict]:
        return [n for n in self.nodes if n["kind"] != "cluster"]

    def node(self, node_id: str) -> dict:
        for n in self.nodes:
            if n["id"] == node_id:
                return n
        raise AssographError(f"unknown node {node_id!r}")


def build_graph_view(
    g: ThresholdedGraph,
    result: ClusteringResult,
    mode: str,
    units: Mapping[object, tuple[str, str]] | None = None,
    doc_index: Mapping[object, list[str]] | None = None,
    graph_id: str | None = None,
    corpus_id: str | None = None,
) -> GraphView:
    """Assemble the full view: unit nodes with per-level membership,
    cluster nodes with labels, and base plus reduced edges."""

    def info(vertex) -> tuple[str, str]:
        if units is not None and vertex in units:
            return units[vertex]
        return ("unit", str(vertex))

    membership_by_level = [
        (part.level, part.base_membership()) for part in result.levels
    ]

    nodes: list[dict] = []
    for vertex in sorted(g.vertices):
        kind, label = info(vertex)
        nodes.append(
            {
                "id": unit_ref(vertex),
                "kind": kind,
                "label": label,
                "membership": {
                    str(level): mapping[vertex] for level, mapping in membership_by_level
                },
            }
        )

    labels_by_level = {
        part.level: label_clusters(g, result, part.level) for part in result.levels
    }
    last = len(result.levels)
    for part in result.levels:
        parent_map = (
            result.level(part.level + 1).membership() if part.level < last else {}
        )
        for cluster in part.clusters:
            label = labels_by_level[part.level][cluster.id]
            kind, label_form = info(label.label_unit)
            members = [
                unit_ref(m) if part.level == 1 else m for m in cluster.members
            ]
            nodes.append(
                {
                    "id": cluster.id,
                    "kind": "cluster",
                    "level": part.level,
                    "label": label_form,
                    "label_unit": unit_ref(label.label_unit),
                    "external_links": label.external_link_count,
                    "members": members,
                    "base_members": [unit_ref(b) for b in cluster.base_members],
                    "size": len(cluster.base_members),
                    "parent": parent_map.get(cluster.id),
                }
            )

    s_level1 = result.levels[0].s_edges if result.levels else frozenset()
    edges: list[dict] = []
    for (u, v), value in sorted(g.edges.items()):
        edges.append(
            {
                "source": unit_ref(u),
                "target": unit_ref(v),
                "value": value,
                "level": 0,
                "s_edge": (u, v) in s_level1,
            }
        )
    for level_no, red in enumerate(result.reduced_graphs, start=1):
        s_next = (
            result.levels[level_no].s_edges if level_no < len(result.levels) else frozenset()
        )
        for (u, v), value in sorted(red.edges.items()):
            edges.append(
                {
                    "source": u,
                    "target": v,
                    "value": value,
                    "level": level_no,
                    "s_edge": (u, v) in s_next,
                }
            )

    index = {}
    if doc_index:
        index = {unit_ref(k): list(v) for k, v in sorted(doc_index.items(), key=lambda kv: str(kv[0]))}

    return GraphView(
        mode=mode,
        threshold=g.s,
        level_count=len(result.levels),
        capped=result.capped,
        nodes=tuple(nodes),
        edges=tuple(edges),
        doc_index=index,
        graph_id=graph_id,
        corpus_id=corpus_id,
    )
