"""Command line interface: ingest, terms, graph, cluster, inspect, path, export, serve."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .analysis import cluster_subgraph, strongest_path
from .corpus import corpus_stats, parse_corpus, register_terms, with_variants
from .cpcl import cpcl
from .errors import AssographError
from .graph import (
    COAUTHOR,
    DEFAULT_THRESHOLD,
    TERM_AUTHOR,
    apply_variant_valuation,
    build_hypergraph,
    derive_graph,
    threshold,
)
from .ioservice.artifacts import (
    content_id,
    corpus_units_info,
    read_corpus_file,
    read_graph_file,
    read_result_file,
    write_atomic,
    write_corpus_file,
    write_graph_file,
    write_result_file,
)
from .ioservice.exports import export_dot, export_gdl
from .ioservice.view import build_graph_view, unit_ref
from .termvar import extract_corpus_terms, find_variants, load_synonym_lexicon


@click.group()
def main():
    """Association graphs from bibliographic corpora."""


def _fail(exc: Exception):
    raise click.ClickException(str(exc))


@main.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="corpus file to write")
def ingest(source, out):
    """Parse line-delimited records into a corpus file."""
    try:
        corpus = parse_corpus(Path(source).read_text(encoding="utf-8"))
    except AssographError as exc:
        _fail(exc)
    text = write_corpus_file(corpus)
    write_atomic(out, text)
    stats = corpus_stats(corpus)
    click.echo(
        f"{out}: {stats.documents} documents, {stats.authors} authors (id {content_id(text)})"
    )


@main.command()
@click.argument("corpus_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["keywords", "naive_np"]), default="keywords")
@click.option("--synonyms", type=click.Path(exists=True, dir_okay=False), help="tab-separated synonym pairs")
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False), help="one stopword per line")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def terms(corpus_file, mode, synonyms, stopwords, out):
    """Extract terms and variation links into an enriched corpus file."""
    corpus = read_corpus_file(Path(corpus_file).read_text(encoding="utf-8"))
    lexicon = []
    if synonyms:
        lexicon = load_synonym_lexicon(Path(synonyms).read_text(encoding="utf-8"))
    stop = None
    if stopwords:
        stop = frozenset(
            w.strip().lower() for w in Path(stopwords).read_text(encoding="utf-8").splitlines() if w.strip()
        )
    try:
        per_doc = extract_corpus_terms(corpus, mode, stop)
        corpus = register_terms(corpus, per_doc)
        links = find_variants(corpus.term_units, lexicon)
        corpus = with_variants(corpus, links)
    except AssographError as exc:
        _fail(exc)
    write_atomic(out, write_corpus_file(corpus))
    click.echo(f"{out}: {len(corpus.term_units)} terms, {len(corpus.variants)} variant links")


@main.command()
@click.argument("corpus_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice([COAUTHOR, TERM_AUTHOR]), default=COAUTHOR)
@click.option("--threshold", "s", type=float, default=None, help="association threshold (default 0.0 / 0.8)")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def graph(corpus_file, mode, s, out):
    """Build the valued association graph from a corpus file."""
    text = Path(corpus_file).read_text(encoding="utf-8")
    corpus = read_corpus_file(text)
    try:
        valued = derive_graph(build_hypergraph(corpus, mode))
        if mode == TERM_AUTHOR:
            valued = apply_variant_valuation(valued, corpus.variants)
        if s is None:
            s = DEFAULT_THRESHOLD[mode]
        tg = threshold(valued, s)
    except AssographError as exc:
        _fail(exc)
    write_atomic(
        out,
        write_graph_file(tg, mode, units=corpus_units_info(corpus), corpus_id=content_id(text)),
    )
    click.echo(f"{out}: {len(tg.vertices)} vertices, {len(tg.edges)} edges above s={s}")


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--levels", type=int, default=None, help="level cap (default: iterate to the fixpoint)")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def cluster(graph_file, levels, out):
    """Cluster a graph file into a multilevel result file."""
    tg, mode, units, corpus_id = read_graph_file(Path(graph_file).read_text(encoding="utf-8"))
    try:
        result = cpcl(tg, max_levels=levels)
    except AssographError as exc:
        _fail(exc)
    write_atomic(out, write_result_file(result, mode, units=units, corpus_id=corpus_id))
    top = result.levels[-1]
    click.echo(
        f"{out}: {len(result.levels)} level(s), {len(top.clusters)} top clusters"
        + (" (capped)" if result.capped else "")
    )


@main.command()
@click.argument("result_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--cluster", "cluster_id", required=True)
def inspect(result_file, cluster_id):
    """Print a cluster's members, internal edges and boundary."""
    result, mode, units, _ = read_result_file(Path(result_file).read_text(encoding="utf-8"))

    def label(v):
        return units.get(v, ("unit", str(v)))[1]

    try:
        view = cluster_subgraph(result.base, result, cluster_id)
    except AssographError as exc:
        _fail(exc)
    click.echo(f"cluster {cluster_id} ({len(view.members)} members)")
    for m in view.members:
        click.echo(f"  member {unit_ref(m)}  {label(m)}")
    for (u, v), value in sorted(view.internal.edges.items()):
        mark = "*" if (u, v) in view.skeleton else " "
        click.echo(f"  edge {mark} {label(u)} -- {label(v)}  {value:.3f}")
    for b in view.boundary:
        click.echo(
            f"  out    {label(b.inside)} -> {label(b.outside)} [{b.outside_cluster}]  {b.value:.3f}"
        )


@main.command()
@click.argument("result_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--from", "src", required=True, help="unit id, e.g. u3 or 3")
@click.option("--to", "dst", required=True)
def path(result_file, src, dst):
    """Print the strongest (bottleneck-optimal) path between two units."""
    result, mode, units, _ = read_result_file(Path(result_file).read_text(encoding="utf-8"))

    def resolve(ref: str) -> int:
        raw = ref[1:] if ref.startswith("u") else ref
        try:
            return int(raw)
        except ValueError:
            raise click.ClickException(f"unit id {ref!r} is not numeric") from None

    try:
        found = strongest_path(result.base, resolve(src), resolve(dst))
    except AssographError as exc:
        _fail(exc)
    if found is None:
        click.echo("no path: the units are disconnected")
        sys.exit(1)
    names = " -> ".join(units.get(v, ("unit", str(v)))[1] for v in found.nodes)
    click.echo(f"bottleneck {found.bottleneck:.3f}: {names}")


@main.command()
@click.argument("result_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["gdl", "dot"]), default="gdl")
@click.option("--fold", default="", help="comma-separated cluster ids to start folded")
@click.option("--out", type=click.Path(dir_okay=False), help="write here instead of stdout")
def export(result_file, fmt, fold, out):
    """Export a result file to GDL or DOT."""
    result, mode, units, corpus_id = read_result_file(Path(result_file).read_text(encoding="utf-8"))
    view = build_graph_view(result.base, result, mode, units=units, corpus_id=corpus_id)
    folded = frozenset(f for f in fold.split(",") if f)
    try:
        text = export_gdl(view, folded) if fmt == "gdl" else export_dot(view)
    except AssographError as exc:
        _fail(exc)
    if out:
        write_atomic(out, text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--port", type=int, default=None, help="default: $ASSOGRAPH_PORT or 8040")
@click.option("--host", default="127.0.0.1")
@click.option("--data", type=click.Path(file_okay=False), default=None, help="default: $ASSOGRAPH_DATA")
def serve(port, host, data):
    """Serve the HTTP API over a data directory of artifacts."""
    from .ioservice.http import ServiceConfig
    from .ioservice.http import serve as run

    config = ServiceConfig.from_env(data)
    config.data_dir.mkdir(parents=True, exist_ok=True)
    run(config, host=host, port=port)


if __name__ == "__main__":
    main()
