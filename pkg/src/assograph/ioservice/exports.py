"""GDL and DOT renderings of a GraphView.

Both exports mirror the multilevel structure as nested subgraphs and are
byte-deterministic. Single-member clusters collapse to their content, so
trailing trivial levels never add wrapper boxes. Values are shown with
3 decimals; full precision lives in the artifacts.
"""

from __future__ import annotations

from ..errors import AssographError
from .view import GraphView


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _fmt(value: float) -> str:
    return f"{value:.3f}"


class _Tree:
    """Cluster nesting resolved from a view, with singleton collapsing."""

    def __init__(self, view: GraphView):
        self.view = view
        self.nodes = {n["id"]: n for n in view.nodes}
        self.edges_by_level: dict[int, list[dict]] = {}
        for edge in view.edges:
            self.edges_by_level.setdefault(edge["level"], []).append(edge)
        top_level = view.level_count
        self.top = [
            n["id"]
            for n in view.nodes
            if n["kind"] == "cluster" and n["level"] == top_level
        ]
        if not self.top and top_level == 0:
            self.top = [n["id"] for n in view.units()]

    def label(self, node_id: str) -> str:
        return self.nodes[node_id]["label"]

    def children(self, cluster_id: str) -> list[str]:
        return list(self.nodes[cluster_id]["members"])

    def is_cluster(self, node_id: str) -> bool:
        return self.nodes[node_id]["kind"] == "cluster"

    def collapse(self, node_id: str) -> str:
        """Skip single-member wrappers down to the first real content."""
        while self.is_cluster(node_id):
            members = self.children(node_id)
            if len(members) != 1:
                return node_id
            node_id = members[0]
        return node_id

    def title(self, node_id: str) -> str:
        node_id = self.collapse(node_id)
        if self.is_cluster(node_id):
            return node_id
        return self.label(node_id)

    def internal_edges(self, cluster_id: str) -> list[dict]:
        """Edges among the cluster's children, at the child level."""
        node = self.nodes[cluster_id]
        inside = set(node["members"])
        return [
            e
            for e in self.edges_by_level.get(node["level"] - 1, [])
            if e["source"] in inside and e["target"] in inside
        ]

    def root_edges(self) -> list[dict]:
        return self.edges_by_level.get(self.view.level_count, [])


def export_gdl(view: GraphView, folded: set[str] | frozenset[str] = frozenset()) -> str:
    """Render nested, foldable subgraphs in graph description language."""
    cluster_ids = {n["id"] for n in view.clusters()}
    unknown = set(folded) - cluster_ids
    if unknown:
        raise AssographError(f"cannot fold unknown cluster(s): {sorted(unknown)}")
    tree = _Tree(view)
    out: list[str] = ["graph: {", '  title: "assograph"']

    def emit_node(node_id: str, depth: int):
        pad = "  " * depth
        out.append(f"{pad}node: {{ title: {_quote(tree.label(node_id))} }}")

    def emit_edge(edge: dict, depth: int):
        pad = "  " * depth
        source, target = tree.title(edge["source"]), tree.title(edge["target"])
        out.append(
            f"{pad}edge: {{ sourcename: {_quote(source)} targetname: {_quote(target)}"
            f" label: {_quote(_fmt(edge['value']))} }}"
        )

    def emit(node_id: str, depth: int):
        node_id = tree.collapse(node_id)
        if not tree.is_cluster(node_id):
            emit_node(node_id, depth)
            return
        pad = "  " * depth
        out.append(f"{pad}graph: {{")
        out.append(f'{pad}  title: {_quote(node_id)}')
        out.append(f'{pad}  label: {_quote(tree.label(node_id))}')
        out.append(f"{pad}  folded: {'yes' if node_id in folded else 'no'}")
        for child in tree.children(node_id):
            emit(child, depth + 1)
        for edge in tree.internal_edges(node_id):
            emit_edge(edge, depth + 1)
        out.append(f"{pad}}}")

    for top in tree.top:
        emit(top, 1)
    for edge in tree.root_edges():
        emit_edge(edge, 1)
    out.append("}")
    return "\n".join(out) + "\n"


def export_dot(view: GraphView) -> str:
    """Render clusters as DOT ``subgraph cluster_*`` blocks.

    DOT has no fold attribute, so the full unfolded structure is emitted:
    nested cluster blocks declare the unit nodes, all unit-level edges
    follow at the root.
    """
    tree = _Tree(view)
    out: list[str] = ["graph assograph {"]

    def emit(node_id: str, depth: int):
        node_id = tree.collapse(node_id)
        pad = "  " * depth
        if not tree.is_cluster(node_id):
            out.append(f"{pad}{_quote(tree.label(node_id))};")
            return
        out.append(f"{pad}subgraph {_quote('cluster_' + node_id)} {{")
        out.append(f"{pad}  label={_quote(tree.label(node_id))};")
        for child in tree.children(node_id):
            emit(child, depth + 1)
        out.append(f"{pad}}}")

    for top in tree.top:
        emit(top, 1)
    for edge in tree.edges_by_level.get(0, []):
        out.append(
            f"  {_quote(tree.label(edge['source']))} -- {_quote(tree.label(edge['target']))}"
            f" [label={_quote(_fmt(edge['value']))}];"
        )
    out.append("}")
    return "\n".join(out) + "\n"
