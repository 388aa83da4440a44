"""Document hypergraph and the valued association graph derived from it.

Every document contributes one hyper-edge (its author units, or in
term-author mode its authors, terms and their direct variants). The
association graph has an edge for every unit pair that co-occurs in at
least one hyper-edge, valued by the equivalence coefficient: the product
of the two conditional co-occurrence probabilities, n_uv^2 / (n_u * n_v).
Pairs that never co-occur have no edge at all, which keeps the graph
sparse; frequencies are never floored.

Edge values are quantized to 12 significant digits on construction so that
serialized artifacts round-trip exactly.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, TypeVar

from .corpus import Corpus
from .errors import AssographError, UnknownDocumentError
from .termvar import VariantLink

log = logging.getLogger(__name__)

COAUTHOR = "coauthor"
TERM_AUTHOR = "term_author"

DEFAULT_THRESHOLD = {COAUTHOR: 0.0, TERM_AUTHOR: 0.8}

V = TypeVar("V", bound=Hashable)


def quantize(value: float) -> float:
    """Round to 12 significant digits (the artifact precision)."""
    return float(f"{value:.12g}")


def pair(u, v) -> tuple:
    if u == v:
        raise AssographError(f"self-loop on {u!r}")
    return (u, v) if u < v else (v, u)


def equivalence_coefficient(n_u: int, n_v: int, n_uv: int) -> float:
    """Association strength n_uv^2 / (n_u * n_v), in (0, 1].

    Requires n_u >= n_uv >= 1 and n_v >= n_uv; pairs with zero
    co-occurrence simply have no edge and must not be valued here.
    """
    if n_uv < 1:
        raise AssographError(f"co-occurrence count must be >= 1, got {n_uv}")
    if n_u < n_uv or n_v < n_uv:
        raise AssographError(
            f"occurrence counts ({n_u}, {n_v}) cannot be below the co-occurrence count {n_uv}"
        )
    return (n_uv * n_uv) / (n_u * n_v)


@dataclass(frozen=True)
class Hypergraph:
    """One hyper-edge per document; occurrence counts per unit."""

    hyperedges: dict[str, frozenset[int]]
    unit_occurrence: dict[int, int]

    def check(self) -> None:
        recount = Counter()
        for members in self.hyperedges.values():
            recount.update(members)
        if dict(recount) != self.unit_occurrence:
            raise AssographError("unit_occurrence disagrees with hyperedges")


def build_hypergraph(
    corpus: Corpus,
    mode: str = COAUTHOR,
    terms_per_doc: Mapping[str, Iterable[int]] | None = None,
    variants: Iterable[VariantLink] | None = None,
) -> Hypergraph:
    """Build the document hypergraph for the requested mode.

    In ``coauthor`` mode each hyper-edge is the document's author set. In
    ``term_author`` mode it also contains the document's terms and every
    term directly variant-linked to one of them. ``terms_per_doc`` must
    then cover every document; by default both it and ``variants`` are
    taken from the corpus enrichment. Hyper-edges with fewer than two
    units stay in the hypergraph even though they yield no pairs.
    """
    if mode not in (COAUTHOR, TERM_AUTHOR):
        raise AssographError(f"unknown hypergraph mode {mode!r}")

    hyperedges: dict[str, frozenset[int]] = {}
    if mode == COAUTHOR:
        for doc in corpus.documents:
            hyperedges[doc.doc_id] = frozenset(corpus.doc_author_units[doc.doc_id])
    else:
        if terms_per_doc is None and variants is None:
            for doc in corpus.documents:
                hyperedges[doc.doc_id] = corpus.doc_units(doc.doc_id)
        else:
            terms_per_doc = {} if terms_per_doc is None else dict(terms_per_doc)
            known = set(corpus.doc_author_units)
            unknown = set(terms_per_doc) - known
            if unknown:
                raise UnknownDocumentError(f"unknown document id(s) in terms_per_doc: {sorted(unknown)}")
            missing = known - set(terms_per_doc)
            if missing:
                raise AssographError(
                    f"terms_per_doc must cover every document; missing {sorted(missing)[:5]}"
                )
            adjacency: dict[int, set[int]] = {}
            for link in variants or ():
                adjacency.setdefault(link.u, set()).add(link.v)
                adjacency.setdefault(link.v, set()).add(link.u)
            for doc in corpus.documents:
                members = set(corpus.doc_author_units[doc.doc_id])
                for t in terms_per_doc[doc.doc_id]:
                    members.add(t)
                    members.update(adjacency.get(t, ()))
                hyperedges[doc.doc_id] = frozenset(members)

    occurrence = Counter()
    for members in hyperedges.values():
        occurrence.update(members)
    return Hypergraph(hyperedges=hyperedges, unit_occurrence=dict(occurrence))


class ValuedGraph:
    """Undirected graph with a valuation in (0, 1] on every edge."""

    def __init__(self, vertices: Iterable, edges: Mapping[tuple, float] | Iterable[tuple]):
        self.vertices = frozenset(vertices)
        items = edges.items() if isinstance(edges, Mapping) else edges
        cleaned = {}
        for (u, v), value in items:
            key = pair(u, v)
            value = quantize(value)
            if not 0.0 < value <= 1.0:
                raise AssographError(f"edge {key} value {value} outside (0, 1]")
            if u not in self.vertices or v not in self.vertices:
                raise AssographError(f"edge {key} endpoint missing from vertex set")
            if key in cleaned and cleaned[key] != value:
                raise AssographError(f"conflicting values for edge {key}")
            cleaned[key] = value
        self.edges: dict[tuple, float] = dict(sorted(cleaned.items()))

    def value(self, u, v) -> float | None:
        return self.edges.get(pair(u, v))

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: {} for v in self.vertices}
        for (u, v), value in self.edges.items():
            adj[u][v] = value
            adj[v][u] = value
        return adj

    def __eq__(self, other):
        return (
            isinstance(other, ValuedGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"ValuedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class ThresholdedGraph:
    """A valued graph restricted to edges strictly above the threshold s.

    Vertices are kept even when thresholding isolates them.
    """

    base: ValuedGraph
    s: float

    @property
    def vertices(self) -> frozenset:
        return self.base.vertices

    @cached_property
    def edges(self) -> dict[tuple, float]:
        return {k: v for k, v in self.base.edges.items() if v > self.s}

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: {} for v in self.vertices}
        for (u, v), value in self.edges.items():
            adj[u][v] = value
            adj[v][u] = value
        return adj

    def value(self, u, v) -> float | None:
        return self.edges.get(pair(u, v))

    def __eq__(self, other):
        return (
            isinstance(other, ThresholdedGraph)
            and self.s == other.s
            and self.base == other.base
        )


def derive_graph(h: Hypergraph) -> ValuedGraph:
    """Project the hypergraph onto unit pairs valued by the equivalence
    coefficient. Exactly the pairs co-occurring in some hyper-edge appear."""
    pair_counts = Counter()
    for members in h.hyperedges.values():
        pair_counts.update(combinations(sorted(members), 2))
    occurrence = h.unit_occurrence
    edges = {
        p: equivalence_coefficient(occurrence[p[0]], occurrence[p[1]], n_uv)
        for p, n_uv in pair_counts.items()
    }
    return ValuedGraph(vertices=occurrence.keys(), edges=edges)


def apply_variant_valuation(g: ValuedGraph, variants: Iterable[VariantLink]) -> ValuedGraph:
    """Override the value of every variant-linked term pair with 1.

    Only existing edges are updated; links whose endpoints never co-occur
    are counted and logged, never added.
    """
    edges = dict(g.edges)
    skipped = 0
    for vlink in variants:
        key = pair(vlink.u, vlink.v)
        if key in edges:
            edges[key] = 1.0
        else:
            skipped += 1
    if skipped:
        log.warning("apply_variant_valuation: %d variant link(s) have no edge in the graph", skipped)
    return ValuedGraph(vertices=g.vertices, edges=edges)


def threshold(g: ValuedGraph, s: float) -> ThresholdedGraph:
    """Keep exactly the edges with value strictly greater than s."""
    if not 0.0 <= s < 1.0:
        raise AssographError(f"threshold must be in [0, 1), got {s}")
    return ThresholdedGraph(base=g, s=s)
