import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from assograph import (
    Term,
    ValuedGraph,
    apply_variant_valuation,
    build_hypergraph,
    derive_graph,
    equivalence_coefficient,
    find_variants,
    parse_corpus,
    register_terms,
    threshold,
    with_variants,
)
from assograph.errors import AssographError
from assograph.graph import quantize

from conftest import records_to_stream


def brute_force_graph(hyperedges):
    """Independent oracle: enumerate all unit pairs, count memberships."""
    units = sorted({u for members in hyperedges.values() for u in members})
    occurrence = {u: sum(1 for m in hyperedges.values() if u in m) for u in units}
    edges = {}
    for u, v in itertools.combinations(units, 2):
        n_uv = sum(1 for m in hyperedges.values() if u in m and v in m)
        if n_uv:
            edges[(u, v)] = n_uv**2 / (occurrence[u] * occurrence[v])
    return set(units), edges


class TestEquivalenceCoefficient:
    def test_perfect_cooccurrence(self):
        assert equivalence_coefficient(5, 5, 5) == 1.0

    def test_fixture_values(self):
        assert equivalence_coefficient(3, 2, 2) == pytest.approx(4 / 6, abs=1e-15)
        assert equivalence_coefficient(2, 2, 1) == 0.25

    def test_bounds(self):
        for n_u, n_v, n_uv in [(9, 7, 3), (4, 4, 4), (100, 1, 1)]:
            value = equivalence_coefficient(n_u, n_v, n_uv)
            assert 0 < value <= 1

    def test_one_iff_equal_counts(self):
        assert equivalence_coefficient(3, 3, 3) == 1.0
        assert equivalence_coefficient(4, 3, 3) < 1.0

    @pytest.mark.parametrize("bad", [(3, 2, 0), (1, 2, 2), (2, 1, 2), (0, 0, 0)])
    def test_preconditions(self, bad):
        with pytest.raises(AssographError):
            equivalence_coefficient(*bad)


class TestHypergraph:
    def test_coauthor_hyperedges(self, three_doc_corpus):
        h = build_hypergraph(three_doc_corpus, "coauthor")
        assert h.hyperedges == {
            "D1": frozenset({0, 1}),
            "D2": frozenset({0, 1, 2}),
            "D3": frozenset({0, 2}),
        }
        assert h.unit_occurrence == {0: 3, 1: 2, 2: 2}
        h.check()

    def test_empty_hyperedge_kept(self):
        corpus = parse_corpus(records_to_stream([{"id": "D1", "authors": []}]))
        h = build_hypergraph(corpus, "coauthor")
        assert h.hyperedges == {"D1": frozenset()}
        assert h.unit_occurrence == {}

    def test_term_author_variant_closure(self):
        corpus = parse_corpus(
            records_to_stream(
                [
                    {"id": "D1", "authors": ["Ames, A."], "keywords": ["chordal graph"]},
                    {"id": "D2", "authors": [], "keywords": ["weakly chordal graph"]},
                ]
            )
        )
        corpus = register_terms(
            corpus,
            {
                "D1": {Term(("chordal", "graph"))},
                "D2": {Term(("weakly", "chordal", "graph"))},
            },
        )
        links = find_variants(corpus.term_units)
        assert len(links) == 1
        corpus = with_variants(corpus, links)
        h = build_hypergraph(corpus, "term_author")
        # author=0, terms: "chordal graph"=1, "weakly chordal graph"=2
        assert h.hyperedges == {
            "D1": frozenset({0, 1, 2}),
            "D2": frozenset({1, 2}),
        }

    def test_explicit_terms_must_cover_every_doc(self, three_doc_corpus):
        with pytest.raises(AssographError, match="cover"):
            build_hypergraph(three_doc_corpus, "term_author", terms_per_doc={"D1": ()})

    def test_unknown_doc_in_terms(self, three_doc_corpus):
        full = {d.doc_id: () for d in three_doc_corpus.documents}
        with pytest.raises(AssographError, match="ghost"):
            build_hypergraph(three_doc_corpus, "term_author", terms_per_doc={**full, "ghost": ()})

    def test_unknown_mode(self, three_doc_corpus):
        with pytest.raises(AssographError):
            build_hypergraph(three_doc_corpus, "keyword")


class TestDeriveGraph:
    def test_three_doc_fixture_values(self, three_doc_corpus):
        g = derive_graph(build_hypergraph(three_doc_corpus, "coauthor"))
        assert g.edges == {
            (0, 1): quantize(2 / 3),
            (0, 2): quantize(2 / 3),
            (1, 2): 0.25,
        }

    def test_disjoint_hyperedges(self):
        corpus = parse_corpus(
            records_to_stream(
                [
                    {"id": "D1", "authors": ["Ames, A.", "Bloom, B."]},
                    {"id": "D2", "authors": ["Cruz, C.", "Diaz, D."]},
                ]
            )
        )
        g = derive_graph(build_hypergraph(corpus, "coauthor"))
        assert g.edges == {(0, 1): 1.0, (2, 3): 1.0}

    def test_single_hyperedge_is_complete(self):
        names = ["Abel, A.", "Blake, B.", "Cole, C.", "Dunn, D.", "Early, E."]
        corpus = parse_corpus(records_to_stream([{"id": "D1", "authors": names}]))
        g = derive_graph(build_hypergraph(corpus, "coauthor"))
        assert len(g.edges) == 10
        assert set(g.edges.values()) == {1.0}

    def test_matches_brute_force_on_random_hypergraphs(self):
        rng = random.Random(7)
        for _ in range(40):
            n_units = rng.randint(1, 8)
            hyperedges = {
                f"D{i}": frozenset(rng.sample(range(n_units), rng.randint(0, n_units)))
                for i in range(rng.randint(1, 12))
            }
            occurrence = {}
            for members in hyperedges.values():
                for u in members:
                    occurrence[u] = occurrence.get(u, 0) + 1
            from assograph import Hypergraph

            g = derive_graph(Hypergraph(hyperedges, occurrence))
            units, expected = brute_force_graph(hyperedges)
            assert g.vertices == frozenset(units)
            assert g.edges.keys() == expected.keys()
            for key, value in expected.items():
                assert math.isclose(g.edges[key], value, abs_tol=1e-12)


class TestVariantValuation:
    def make_term_graph(self):
        # variant chain: "petri net" -1- "petri-net" -2- "petri-nets";
        # the ends are not linked to each other, so the closure does not
        # make the linked pairs co-occur everywhere and the override bites
        corpus = parse_corpus(
            records_to_stream(
                [
                    {"id": "D1", "authors": ["Ames, A."], "keywords": ["petri net"]},
                    {"id": "D2", "authors": ["Ames, A."], "keywords": ["petri-nets"]},
                    {"id": "D3", "authors": ["Ames, A."], "keywords": ["petri-net"]},
                ]
            )
        )
        corpus = register_terms(
            corpus,
            {
                "D1": {Term(("petri", "net"))},
                "D2": {Term(("petri-nets",))},
                "D3": {Term(("petri-net",))},
            },
        )
        links = find_variants(corpus.term_units)
        assert {(l.u, l.v) for l in links} == {(1, 2), (2, 3)}
        corpus = with_variants(corpus, links)
        return corpus, links

    def test_variant_edges_forced_to_one(self):
        corpus, links = self.make_term_graph()
        g = derive_graph(build_hypergraph(corpus, "term_author"))
        assert g.edges[(1, 2)] == pytest.approx(4 / 6, abs=1e-12)
        overridden = apply_variant_valuation(g, links)
        assert overridden.edges[(1, 2)] == 1.0
        assert overridden.edges[(2, 3)] == 1.0

    def test_non_variant_edges_unchanged(self):
        corpus, links = self.make_term_graph()
        g = derive_graph(build_hypergraph(corpus, "term_author"))
        overridden = apply_variant_valuation(g, links)
        linked = {(l.u, l.v) for l in links}
        untouched = {k: v for k, v in g.edges.items() if k not in linked}
        assert untouched  # author edges and the unlinked chain ends
        for key, value in untouched.items():
            assert overridden.edges[key] == value

    def test_idempotent(self):
        corpus, links = self.make_term_graph()
        g = derive_graph(build_hypergraph(corpus, "term_author"))
        once = apply_variant_valuation(g, links)
        twice = apply_variant_valuation(once, links)
        assert once == twice

    def test_empty_variants_identity(self):
        corpus, _ = self.make_term_graph()
        g = derive_graph(build_hypergraph(corpus, "term_author"))
        assert apply_variant_valuation(g, ()) == g

    def test_dangling_link_warns_and_ignores(self, caplog):
        from assograph.termvar import VariantLink

        g = ValuedGraph({1, 2, 9}, {(1, 2): 0.5})
        with caplog.at_level("WARNING"):
            out = apply_variant_valuation(g, [VariantLink(1, 9, "spelling")])
        assert out == g
        assert "1 variant link" in caplog.text


class TestThreshold:
    def test_zero_keeps_everything(self, three_doc_corpus):
        g = derive_graph(build_hypergraph(three_doc_corpus, "coauthor"))
        t = threshold(g, 0.0)
        assert t.edges == g.edges
        assert t.vertices == g.vertices

    def test_strictness(self, three_doc_corpus):
        g = derive_graph(build_hypergraph(three_doc_corpus, "coauthor"))
        t = threshold(g, 0.5)
        assert set(t.edges) == {(0, 1), (0, 2)}
        exact = threshold(g, quantize(2 / 3))
        assert exact.edges == {}  # strict: equal values drop

    def test_vertices_survive_isolation(self, three_doc_corpus):
        g = derive_graph(build_hypergraph(three_doc_corpus, "coauthor"))
        t = threshold(g, 0.9)
        assert t.edges == {}
        assert t.vertices == {0, 1, 2}

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
    def test_domain(self, bad, three_doc_corpus):
        g = derive_graph(build_hypergraph(three_doc_corpus, "coauthor"))
        with pytest.raises(AssographError):
            threshold(g, bad)

    @given(st.floats(min_value=0, max_value=0.99), st.floats(min_value=0, max_value=0.99))
    def test_monotonicity(self, a, b):
        lo, hi = min(a, b), max(a, b)
        g = ValuedGraph(
            range(6),
            {(0, 1): 0.1, (1, 2): 0.35, (2, 3): 0.5, (3, 4): 0.75, (4, 5): 0.99, (0, 5): 1.0},
        )
        assert set(threshold(g, hi).edges) <= set(threshold(g, lo).edges)
