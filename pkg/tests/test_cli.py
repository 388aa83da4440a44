import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from assograph.cli import main

from conftest import THREE_DOC_RECORDS, records_to_stream

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def workspace(tmp_path):
    (tmp_path / "records.jsonl").write_text(records_to_stream(THREE_DOC_RECORDS), encoding="utf-8")
    return tmp_path


def run_ok(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


def test_full_pipeline(runner, workspace):
    records = workspace / "records.jsonl"
    corpus = workspace / "fixture.corpus"
    graph = workspace / "fixture.graph"
    result = workspace / "fixture.result"

    out = run_ok(runner, ["ingest", str(records), "--out", str(corpus)])
    assert "3 documents, 3 authors" in out.output

    out = run_ok(runner, ["graph", str(corpus), "--mode", "coauthor", "--threshold", "0", "--out", str(graph)])
    assert "3 vertices, 3 edges" in out.output

    out = run_ok(runner, ["cluster", str(graph), "--out", str(result)])
    assert "level(s)" in out.output

    out = run_ok(runner, ["export", str(result), "--format", "dot"])
    assert out.output.startswith("graph assograph {")

    out = run_ok(runner, ["path", str(result), "--from", "u1", "--to", "u2"])
    assert "bottleneck" in out.output
    assert "BLOOM, B." in out.output


def test_inspect_cluster(runner, workspace):
    records = workspace / "records.jsonl"
    corpus, graph, result = (workspace / n for n in ("c.corpus", "c.graph", "c.result"))
    run_ok(runner, ["ingest", str(records), "--out", str(corpus)])
    run_ok(runner, ["graph", str(corpus), "--threshold", "0", "--out", str(graph)])
    run_ok(runner, ["cluster", str(graph), "--levels", "1", "--out", str(result)])
    out = run_ok(runner, ["inspect", str(result), "--cluster", "c1-0"])
    assert "AMES, A." in out.output

    bad = runner.invoke(main, ["inspect", str(result), "--cluster", "c9-9"])
    assert bad.exit_code != 0


def test_terms_command(runner, tmp_path):
    records = [
        {"id": "T1", "authors": ["Ames, A."], "keywords": ["petri net"]},
        {"id": "T2", "authors": ["Bloom, B."], "keywords": ["petri-net"]},
    ]
    source = tmp_path / "r.jsonl"
    source.write_text(records_to_stream(records), encoding="utf-8")
    corpus, enriched = tmp_path / "t.corpus", tmp_path / "t2.corpus"
    runner_ = CliRunner()
    run_ok(runner_, ["ingest", str(source), "--out", str(corpus)])
    out = run_ok(runner_, ["terms", str(corpus), "--mode", "keywords", "--out", str(enriched)])
    assert "2 terms, 1 variant links" in out.output

    graph = tmp_path / "t.graph"
    out = run_ok(runner_, ["graph", str(enriched), "--mode", "term_author", "--out", str(graph)])
    assert "s=0.8" in out.output


def test_ingest_reports_bad_line(runner, tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "D1", "authors": []}\nnot json\n', encoding="utf-8")
    result = runner.invoke(main, ["ingest", str(bad), "--out", str(tmp_path / "x.corpus")])
    assert result.exit_code != 0
    assert "line 2" in result.output


def test_export_golden_via_cli(runner, tmp_path):
    # the same four-vertex fixture as the golden files, driven end to end
    records = [
        {"id": "D1", "authors": ["Alpha, A.", "Beta, B."]},
        {"id": "D2", "authors": ["Beta, B.", "Gamma, C."]},
        {"id": "D3", "authors": ["Gamma, C.", "Delta, D."]},
    ]
    source = tmp_path / "r.jsonl"
    source.write_text(records_to_stream(records), encoding="utf-8")
    corpus, graph, result = (tmp_path / n for n in ("g.corpus", "g.graph", "g.result"))
    run_ok(runner, ["ingest", str(source), "--out", str(corpus)])
    run_ok(runner, ["graph", str(corpus), "--threshold", "0", "--out", str(graph)])
    run_ok(runner, ["cluster", str(graph), "--levels", "1", "--out", str(result)])
    out = run_ok(runner, ["export", str(result), "--format", "gdl"])
    assert 'folded: no' in out.output
