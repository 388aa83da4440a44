"""Iterative clustering along locally maximal edges.

Each round selects the edges whose value strictly exceeds every adjacent
edge's value, merges the connected components they span, and rebuilds the
graph over the clusters with the maximum crossing value on each inter-
cluster pair. Rounds repeat until one produces no merge (or a level cap is
hit), so plateaus of equal values stop the process instead of chaining
through weak bridges.

Every round is recorded as a level: the partition of the previous level's
nodes, the selected edge set, and the reduced graph. Cluster ids are
stable strings built from the level number and the smallest base unit the
cluster contains.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .errors import AssographError, UnknownClusterError
from .graph import ThresholdedGraph, ValuedGraph, pair


def cluster_id(level: int, base_members: Iterable) -> str:
    return f"c{level}-{min(base_members)}"


@dataclass(frozen=True)
class Cluster:
    """One cluster: its members are previous-level node ids, its base
    members the original graph vertices it flattens to."""

    id: str
    level: int
    members: tuple
    base_members: tuple


@dataclass(frozen=True)
class PartitionLevel:
    level: int
    clusters: tuple[Cluster, ...]
    s_edges: frozenset[tuple]
    merged: bool

    def membership(self) -> dict:
        """Previous-level node id -> cluster id."""
        return {m: c.id for c in self.clusters for m in c.members}

    def base_membership(self) -> dict:
        return {b: c.id for c in self.clusters for b in c.base_members}


@dataclass(frozen=True)
class ClusteringResult:
    """All recorded levels plus the per-level reduced graphs."""

    base: ThresholdedGraph
    levels: tuple[PartitionLevel, ...]
    reduced_graphs: tuple[ThresholdedGraph, ...]
    capped: bool = False

    @cached_property
    def clusters_by_id(self) -> dict[str, Cluster]:
        return {c.id: c for lvl in self.levels for c in lvl.clusters}

    def cluster(self, cid: str) -> Cluster:
        found = self.clusters_by_id.get(cid)
        if found is None:
            raise UnknownClusterError(f"unknown cluster id {cid!r}")
        return found

    def level(self, level: int) -> PartitionLevel:
        if not 1 <= level <= len(self.levels):
            raise AssographError(f"level {level} out of range 1..{len(self.levels)}")
        return self.levels[level - 1]

    @cached_property
    def flat_membership(self) -> dict:
        """Base vertex -> cluster id at the last level."""
        if not self.levels:
            return {}
        return self.levels[-1].base_membership()

    def __eq__(self, other):
        return (
            isinstance(other, ClusteringResult)
            and self.base == other.base
            and self.levels == other.levels
            and self.reduced_graphs == other.reduced_graphs
            and self.capped == other.capped
        )


def local_max_edges(g: ThresholdedGraph) -> frozenset[tuple]:
    """Edges strictly greater than every edge adjacent at either endpoint.

    Absent edges impose no constraint, so the only edge of an isolated
    pair is vacuously selected; any tie with an adjacent edge disqualifies.
    """
    # top two incident values per vertex; the runner-up stands in for
    # "largest other edge" when the edge under test holds the maximum
    best: dict[Hashable, tuple[float, float]] = {v: (0.0, 0.0) for v in g.vertices}
    for (u, v), value in g.edges.items():
        for end in (u, v):
            hi, second = best[end]
            if value > hi:
                best[end] = (value, hi)
            elif value > second:
                best[end] = (hi, value)

    def dominates(end, value: float) -> bool:
        hi, second = best[end]
        return value > (second if value == hi else hi)

    return frozenset(
        e for e, value in g.edges.items() if dominates(e[0], value) and dominates(e[1], value)
    )


def merge_components(
    g: ThresholdedGraph,
    s_edges: frozenset[tuple],
    level: int = 1,
    base_members: Mapping | None = None,
) -> PartitionLevel:
    """Partition g's vertices into the connected components of (V, S).

    ``base_members`` maps each vertex to the base units it stands for
    (identity when clustering the original graph).
    """
    unknown = s_edges - g.edges.keys()
    if unknown:
        raise AssographError(f"s_edges not in graph: {sorted(unknown)[:3]}")

    adjacency: dict = {v: [] for v in g.vertices}
    for u, v in s_edges:
        adjacency[u].append(v)
        adjacency[v].append(u)

    flat = {v: (v,) for v in g.vertices} if base_members is None else dict(base_members)

    seen: set = set()
    clusters: list[Cluster] = []
    for start in g.vertices:
        if start in seen:
            continue
        component = [start]
        seen.add(start)
        queue = [start]
        while queue:
            node = queue.pop()
            for nxt in adjacency[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    component.append(nxt)
                    queue.append(nxt)
        base = tuple(sorted(b for m in component for b in flat[m]))
        clusters.append(
            Cluster(
                id=cluster_id(level, base),
                level=level,
                members=tuple(sorted(component)),
                base_members=base,
            )
        )
    clusters.sort(key=lambda c: c.base_members[0])
    return PartitionLevel(
        level=level,
        clusters=tuple(clusters),
        s_edges=s_edges,
        merged=any(len(c.members) > 1 for c in clusters),
    )


def reduce_graph(g: ThresholdedGraph, p: PartitionLevel) -> ThresholdedGraph:
    """Graph over cluster ids; inter-cluster value = max crossing value."""
    membership = p.membership()
    missing = g.vertices - membership.keys()
    if missing or len(membership) != len(g.vertices):
        raise AssographError("partition does not cover the graph's vertices exactly")

    reduced: dict[tuple, float] = {}
    for (u, v), value in g.edges.items():
        cu, cv = membership[u], membership[v]
        if cu == cv:
            continue
        key = pair(cu, cv)
        if value > reduced.get(key, 0.0):
            reduced[key] = value
    vg = ValuedGraph(vertices=(c.id for c in p.clusters), edges=reduced)
    return ThresholdedGraph(base=vg, s=g.s)


def cpcl(g: ThresholdedGraph, max_levels: int | None = None) -> ClusteringResult:
    """Run the full clustering loop, recording every level.

    Iterates select/merge/reduce until a round merges nothing, so the
    final level always has ``merged=False`` unless ``max_levels`` cut the
    loop short (then the result is flagged ``capped``).
    """
    if max_levels is not None and max_levels < 1:
        raise AssographError(f"max_levels must be >= 1, got {max_levels}")

    levels: list[PartitionLevel] = []
    reduced_graphs: list[ThresholdedGraph] = []
    current = g
    base_of: Mapping | None = None
    capped = False
    while True:
        level_no = len(levels) + 1
        s_edges = local_max_edges(current)
        part = merge_components(current, s_edges, level=level_no, base_members=base_of)
        red = reduce_graph(current, part)
        levels.append(part)
        reduced_graphs.append(red)
        if not part.merged:
            break
        if max_levels is not None and len(levels) >= max_levels:
            capped = True
            break
        current = red
        base_of = {c.id: c.base_members for c in part.clusters}

    return ClusteringResult(
        base=g,
        levels=tuple(levels),
        reduced_graphs=tuple(reduced_graphs),
        capped=capped,
    )
