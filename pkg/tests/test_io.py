import json
from pathlib import Path

import pytest

from assograph import Term, ThresholdedGraph, ValuedGraph, cpcl, find_variants, parse_corpus, register_terms, threshold, with_variants
from assograph.errors import AssographError
from assograph.graph import build_hypergraph, derive_graph
from assograph.ioservice import (
    GraphView,
    build_graph_view,
    content_id,
    export_dot,
    export_gdl,
    read_corpus_file,
    read_graph_file,
    read_result_file,
    write_atomic,
    write_corpus_file,
    write_graph_file,
    write_result_file,
)
from assograph.ioservice.artifacts import corpus_units_info

from conftest import THREE_DOC_RECORDS, records_to_stream, tgraph

GOLDEN = Path(__file__).parent / "golden"

PATH_UNITS = {
    0: ("author", "ALPHA, A."),
    1: ("author", "BETA, B."),
    2: ("author", "GAMMA, C."),
    3: ("author", "DELTA, D."),
}


@pytest.fixture
def enriched_corpus(three_doc_corpus):
    corpus = register_terms(
        three_doc_corpus,
        {
            "D1": {Term(("petri", "net"), frozenset({"Petri net"}))},
            "D2": {Term(("petri-net",)), Term(("chordal", "graph"))},
        },
    )
    return with_variants(corpus, find_variants(corpus.term_units))


class TestCorpusFile:
    def test_round_trip_plain(self, three_doc_corpus):
        text = write_corpus_file(three_doc_corpus)
        assert read_corpus_file(text) == three_doc_corpus
        assert write_corpus_file(read_corpus_file(text)) == text

    def test_round_trip_enriched(self, enriched_corpus):
        text = write_corpus_file(enriched_corpus)
        loaded = read_corpus_file(text)
        assert loaded == enriched_corpus
        assert loaded.variants == enriched_corpus.variants
        assert write_corpus_file(loaded) == text

    def test_preserves_optional_field_absence(self):
        corpus = parse_corpus(records_to_stream([{"id": "D1", "authors": []}]))
        loaded = read_corpus_file(write_corpus_file(corpus))
        assert loaded.documents[0].title is None
        assert loaded.documents[0].keywords is None

    def test_rejects_wrong_format(self):
        with pytest.raises(AssographError, match="format"):
            read_corpus_file('{"format":"other","version":1}\n')


class TestGraphFile:
    def test_round_trip(self, three_doc_corpus):
        tg = threshold(derive_graph(build_hypergraph(three_doc_corpus, "coauthor")), 0.5)
        text = write_graph_file(tg, "coauthor", units=corpus_units_info(three_doc_corpus), corpus_id="abc")
        loaded, mode, units, corpus_id = read_graph_file(text)
        assert loaded == tg
        assert (mode, corpus_id) == ("coauthor", "abc")
        assert units[0] == ("author", "AMES, A.")
        assert write_graph_file(loaded, mode, units=units, corpus_id=corpus_id) == text

    def test_keeps_subthreshold_edges_in_base(self, three_doc_corpus):
        tg = threshold(derive_graph(build_hypergraph(three_doc_corpus, "coauthor")), 0.5)
        loaded, *_ = read_graph_file(write_graph_file(tg, "coauthor"))
        assert (1, 2) in loaded.base.edges
        assert (1, 2) not in loaded.edges


class TestResultFile:
    @pytest.mark.parametrize("levels", [None, 1])
    def test_round_trip(self, path_graph, levels):
        result = cpcl(path_graph, max_levels=levels)
        text = write_result_file(result, "coauthor", units=PATH_UNITS)
        loaded, mode, units, corpus_id = read_result_file(text)
        assert loaded == result
        assert mode == "coauthor"
        assert corpus_id is None
        assert write_result_file(loaded, mode, units=units) == text

    def test_round_trip_empty_graph(self):
        result = cpcl(tgraph({}))
        text = write_result_file(result, "coauthor")
        assert read_result_file(text)[0] == result

    def test_content_id_stable(self, path_graph):
        a = write_result_file(cpcl(path_graph), "coauthor", units=PATH_UNITS)
        b = write_result_file(cpcl(path_graph), "coauthor", units=PATH_UNITS)
        assert content_id(a) == content_id(b)


def test_write_atomic(tmp_path):
    target = tmp_path / "nested" / "artifact.graph"
    write_atomic(target, "hello\n")
    assert target.read_text() == "hello\n"
    write_atomic(target, "world\n")
    assert target.read_text() == "world\n"
    assert list(target.parent.glob(".tmp-*")) == []


class TestGraphView:
    def test_json_round_trip(self, path_graph):
        view = build_graph_view(path_graph, cpcl(path_graph), "coauthor", units=PATH_UNITS)
        again = GraphView.from_json(view.to_json())
        assert again == view
        assert again.to_json() == view.to_json()

    def test_every_edge_references_nodes(self, path_graph):
        view = build_graph_view(path_graph, cpcl(path_graph), "coauthor", units=PATH_UNITS)
        ids = {n["id"] for n in view.nodes}
        for edge in view.edges:
            assert edge["source"] in ids and edge["target"] in ids

    def test_cluster_nodes_list_members(self, path_graph):
        view = build_graph_view(path_graph, cpcl(path_graph, max_levels=1), "coauthor", units=PATH_UNITS)
        clusters = {c["id"]: c for c in view.clusters()}
        assert clusters["c1-0"]["members"] == ["u0", "u1"]
        assert clusters["c1-0"]["size"] == 2
        assert clusters["c1-0"]["label"] == "BETA, B."

    def test_s_edges_flagged(self, path_graph):
        view = build_graph_view(path_graph, cpcl(path_graph, max_levels=1), "coauthor", units=PATH_UNITS)
        flags = {(e["source"], e["target"]): e["s_edge"] for e in view.edges if e["level"] == 0}
        assert flags == {("u0", "u1"): True, ("u1", "u2"): False, ("u2", "u3"): True}

    def test_membership_per_level(self, path_graph):
        view = build_graph_view(path_graph, cpcl(path_graph), "coauthor", units=PATH_UNITS)
        u0 = view.node("u0")
        assert u0["membership"] == {"1": "c1-0", "2": "c2-0", "3": "c3-0"}


class TestExports:
    def make_view(self, path_graph, levels=1):
        return build_graph_view(path_graph, cpcl(path_graph, max_levels=levels), "coauthor", units=PATH_UNITS)

    def test_gdl_matches_golden(self, path_graph):
        view = self.make_view(path_graph)
        golden = (GOLDEN / "path_level1.gdl").read_text(encoding="utf-8")
        assert export_gdl(view) == golden

    def test_dot_matches_golden(self, path_graph):
        view = self.make_view(path_graph)
        golden = (GOLDEN / "path_level1.dot").read_text(encoding="utf-8")
        assert export_dot(view) == golden

    def test_empty_graph_exports(self):
        view = build_graph_view(tgraph({}), cpcl(tgraph({})), "coauthor")
        assert export_gdl(view) == 'graph: {\n  title: "assograph"\n}\n'
        assert export_dot(view) == "graph assograph {\n}\n"

    def test_folded_flags(self, path_graph):
        view = self.make_view(path_graph)
        text = export_gdl(view, frozenset({"c1-0"}))
        assert "folded: yes" in text
        assert text.count("folded: no") == 1

    def test_folding_unknown_cluster_rejected(self, path_graph):
        view = self.make_view(path_graph)
        with pytest.raises(AssographError, match="c9-9"):
            export_gdl(view, frozenset({"c9-9"}))

    def test_all_folded_keeps_units_inside_subgraphs(self, path_graph):
        view = self.make_view(path_graph)
        text = export_gdl(view, frozenset({"c1-0", "c1-2"}))
        top_level_nodes = [line for line in text.splitlines() if line.startswith("  node:")]
        assert top_level_nodes == []

    def test_escaping(self):
        g = tgraph({(0, 1): 0.5})
        units = {0: ("author", 'QUO"TE, A.'), 1: ("author", "BACK\\SLASH, B.")}
        view = build_graph_view(g, cpcl(g, max_levels=1), "coauthor", units=units)
        gdl, dot = export_gdl(view), export_dot(view)
        assert '\\"' in gdl and '\\"' in dot
        assert "\\\\" in gdl and "\\\\" in dot

    def test_exports_deterministic(self, path_graph):
        views = [self.make_view(path_graph) for _ in range(3)]
        assert len({export_gdl(v) for v in views}) == 1
        assert len({export_dot(v) for v in views}) == 1

    def test_fixpoint_nests_levels(self, path_graph):
        view = self.make_view(path_graph, levels=None)
        text = export_gdl(view)
        assert 'title: "c2-0"' in text
        # the trivial final level adds no wrapper around the single cluster
        assert 'title: "c3-0"' not in text
