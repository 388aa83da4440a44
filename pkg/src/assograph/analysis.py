"""Interpretive layers over a clustered association graph.

Cluster labels follow the map-reading rule: the member with the most
edges leaving its cluster names the cluster. Betweenness is computed on
the thresholded topology with unit edge lengths, accumulating exact
rationals so scores are reproducible bit for bit. Strong paths are
bottleneck-optimal: they maximize the weakest association along the way,
then minimize hops, then take the lexicographically smallest route.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .corpus import Corpus
from .cpcl import ClusteringResult
from .errors import UnknownUnitError
from .graph import ThresholdedGraph, ValuedGraph


@dataclass(frozen=True)
class ClusterLabel:
    cluster_id: str
    label_unit: object
    external_link_count: int


def label_clusters(
    g: ThresholdedGraph, result: ClusteringResult, level: int
) -> dict[str, ClusterLabel]:
    """Label every cluster of a level by its most outward-linked member.

    The count is taken on the thresholded base graph. Ties fall to the
    higher total degree, then to the smaller unit.
    """
    part = result.level(level)
    membership = part.base_membership()
    adjacency = g.adjacency

    labels: dict[str, ClusterLabel] = {}
    for cluster in part.clusters:
        inside = set(cluster.base_members)
        best = None
        for member in cluster.base_members:
            neighbors = adjacency.get(member, {})
            external = sum(1 for n in neighbors if n not in inside)
            rank = (-external, -len(neighbors), member)
            if best is None or rank < best[0]:
                best = (rank, member, external)
        labels[cluster.id] = ClusterLabel(
            cluster_id=cluster.id, label_unit=best[1], external_link_count=best[2]
        )
    return labels


def betweenness(g: ThresholdedGraph) -> dict:
    """Shortest-path betweenness on the thresholded topology.

    Edge values are ignored for hop counting. Each connected unordered
    pair contributes a total weight of 1, split across its geodesics;
    accumulation is exact (rational arithmetic), so equal inputs give
    byte-equal scores.
    """
    adjacency = {v: sorted(nbrs) for v, nbrs in g.adjacency.items()}
    score = {v: Fraction(0) for v in g.vertices}

    for source in g.vertices:
        # Brandes-style single-source accumulation
        stack: list = []
        preds: dict = {v: [] for v in adjacency}
        sigma = {v: 0 for v in adjacency}
        dist = {v: -1 for v in adjacency}
        sigma[source] = 1
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: Fraction(0) for v in adjacency}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += Fraction(sigma[v], sigma[w]) * (1 + delta[w])
            if w != source:
                score[w] += delta[w]

    # each unordered pair was seen from both endpoints
    return {v: float(s / 2) for v, s in sorted(score.items())}


@dataclass(frozen=True)
class StrongPath:
    nodes: tuple
    bottleneck: float

    def __len__(self):
        return len(self.nodes)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def connected_components(vertices, edges) -> list[frozenset]:
    """Components of an edge list, as a sorted list of frozensets."""
    uf = _UnionFind(vertices)
    for u, v in edges:
        uf.union(u, v)
    groups: dict = {}
    for v in vertices:
        groups.setdefault(uf.find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=lambda c: min(c))


def _max_bottleneck(g: ThresholdedGraph, u, v) -> float | None:
    """Largest achievable minimum edge value between u and v, or None."""
    uf = _UnionFind(g.vertices)
    by_value: dict[float, list[tuple]] = {}
    for e, value in g.edges.items():
        by_value.setdefault(value, []).append(e)
    for value in sorted(by_value, reverse=True):
        for a, b in by_value[value]:
            uf.union(a, b)
        if uf.find(u) == uf.find(v):
            return value
    return None


def strongest_path(g: ThresholdedGraph, u, v) -> StrongPath | None:
    """Bottleneck-optimal route from u to v, or None when disconnected.

    Among routes with the maximal minimum edge value, the fewest hops win;
    remaining ties go to the lexicographically smallest vertex sequence.
    A vertex reaches itself by the single-node path with bottleneck 1.
    """
    for x in (u, v):
        if x not in g.vertices:
            raise UnknownUnitError(f"unknown vertex {x!r}")
    if u == v:
        return StrongPath(nodes=(u,), bottleneck=1.0)

    limit = _max_bottleneck(g, u, v)
    if limit is None:
        return None

    adjacency: dict = {x: [] for x in g.vertices}
    for (a, b), value in g.edges.items():
        if value >= limit:
            adjacency[a].append(b)
            adjacency[b].append(a)
    for nbrs in adjacency.values():
        nbrs.sort()

    def bfs(start):
        dist = {start: 0}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    dist_u = bfs(u)
    dist_v = bfs(v)
    hops = dist_u[v]

    # walk greedily: the smallest next vertex that still lies on a geodesic
    path = [u]
    current = u
    while current != v:
        step = dist_u[current] + 1
        current = next(
            y
            for y in adjacency[current]
            if dist_u.get(y) == step and dist_v.get(y) == hops - step
        )
        path.append(current)
    return StrongPath(nodes=tuple(path), bottleneck=limit)


@dataclass(frozen=True)
class BoundaryEdge:
    inside: object
    outside: object
    outside_cluster: str | None
    value: float


@dataclass(frozen=True)
class ClusterView:
    """A cluster unfolded: its induced subgraph and its outward edges."""

    cluster_id: str
    members: tuple
    internal: ValuedGraph
    skeleton: frozenset[tuple]
    boundary: tuple[BoundaryEdge, ...]


def cluster_subgraph(g: ThresholdedGraph, result: ClusteringResult, cluster_id: str) -> ClusterView:
    """Induced subgraph on a cluster's base units plus its boundary edges.

    Boundary edges name the cluster (at the same level) holding the other
    endpoint; internal edges selected at level 1 form the merge skeleton.
    """
    cluster = result.cluster(cluster_id)
    same_level = result.level(cluster.level).base_membership()
    inside = set(cluster.base_members)

    internal: dict[tuple, float] = {}
    boundary: list[BoundaryEdge] = []
    for (a, b), value in g.edges.items():
        a_in, b_in = a in inside, b in inside
        if a_in and b_in:
            internal[(a, b)] = value
        elif a_in or b_in:
            inner, outer = (a, b) if a_in else (b, a)
            boundary.append(
                BoundaryEdge(
                    inside=inner,
                    outside=outer,
                    outside_cluster=same_level.get(outer),
                    value=value,
                )
            )
    level1 = result.levels[0].s_edges if result.levels else frozenset()
    skeleton = frozenset(e for e in internal if e in level1)
    boundary.sort(key=lambda e: (e.inside, e.outside))
    return ClusterView(
        cluster_id=cluster_id,
        members=cluster.base_members,
        internal=ValuedGraph(vertices=inside, edges=internal),
        skeleton=skeleton,
        boundary=tuple(boundary),
    )


def unit_documents(corpus: Corpus, unit_id: int) -> list[str]:
    """Documents whose hyper-edge contains the unit, in corpus order.

    For authors this is document membership; for terms it includes the
    variant closure when the corpus carries variant links.
    """
    corpus.unit(unit_id)
    return [d.doc_id for d in corpus.documents if unit_id in corpus.doc_units(d.doc_id)]
