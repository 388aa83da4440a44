"""Valued association graphs from bibliographic corpora.

Pipeline: parse records into a corpus, optionally extract terms and their
variation links, project the document hypergraph onto a valued graph,
threshold it, cluster it level by level along locally maximal edges, then
inspect, export or serve the result.
"""

from .corpus import (
    AuthorKey,
    Corpus,
    Document,
    StatsReport,
    Unit,
    corpus_stats,
    normalize_author,
    parse_corpus,
    register_terms,
    with_variants,
)
from .cpcl import ClusteringResult, PartitionLevel, cpcl, local_max_edges, merge_components, reduce_graph
from .analysis import (
    ClusterLabel,
    ClusterView,
    StrongPath,
    betweenness,
    cluster_subgraph,
    label_clusters,
    strongest_path,
    unit_documents,
)
from .errors import AssographError
from .graph import (
    Hypergraph,
    ThresholdedGraph,
    ValuedGraph,
    apply_variant_valuation,
    build_hypergraph,
    derive_graph,
    equivalence_coefficient,
    threshold,
)
from .termvar import Term, VariantLink, extract_corpus_terms, extract_terms, find_variants

__version__ = "0.1.0"
