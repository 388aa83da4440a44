"""Line-delimited artifact files for corpora, graphs and clustering results.

Every artifact is UTF-8 text: a header object on the first line, then one
typed record per line, all in canonical JSON (sorted keys, compact
separators). Edge values are already quantized to 12 significant digits,
so writing and re-reading is lossless and byte-stable, and the artifact id
can simply be a digest of the serialized bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Mapping

from ..corpus import Corpus, Unit
from ..cpcl import Cluster, ClusteringResult, PartitionLevel
from ..errors import AssographError
from ..graph import ThresholdedGraph, ValuedGraph
from ..termvar import VariantLink

CORPUS_FORMAT = "assograph-corpus"
GRAPH_FORMAT = "assograph-graph"
RESULT_FORMAT = "assograph-result"
VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def content_id(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def write_atomic(path: str | Path, text: str) -> None:
    """Write-then-rename so readers never observe partial artifacts."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _lines(text: str, expected_format: str):
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise AssographError(f"empty artifact, expected {expected_format}")
    header = json.loads(rows[0])
    if header.get("format") != expected_format:
        raise AssographError(
            f"artifact format {header.get('format')!r} is not {expected_format!r}"
        )
    if header.get("version") != VERSION:
        raise AssographError(f"unsupported artifact version {header.get('version')!r}")
    return header, [json.loads(line) for line in rows[1:]]


# -- corpus ------------------------------------------------------------------


def write_corpus_file(corpus: Corpus) -> str:
    out = [canonical_json({"format": CORPUS_FORMAT, "version": VERSION})]
    for doc in corpus.documents:
        record = {"t": "doc", "id": doc.doc_id, "authors": list(doc.raw_authors)}
        if doc.title is not None:
            record["title"] = doc.title
        if doc.keywords is not None:
            record["keywords"] = list(doc.keywords)
        if doc.abstract_text is not None:
            record["abstract"] = doc.abstract_text
        if doc.year is not None:
            record["year"] = doc.year
        if doc.source_tags is not None:
            record["tags"] = list(doc.source_tags)
        out.append(canonical_json(record))
    for unit in corpus.term_units:
        out.append(
            canonical_json(
                {
                    "t": "term",
                    "id": unit.unit_id,
                    "tokens": list(unit.tokens),
                    "surfaces": list(unit.surfaces),
                }
            )
        )
    for doc in corpus.documents:
        terms = corpus.terms_per_doc.get(doc.doc_id)
        if terms:
            out.append(canonical_json({"t": "doc_terms", "doc": doc.doc_id, "terms": list(terms)}))
    for link in corpus.variants:
        out.append(canonical_json({"t": "variant", "u": link.u, "v": link.v, "kind": link.kind}))
    return "\n".join(out) + "\n"


def read_corpus_file(text: str) -> Corpus:
    from ..corpus import parse_corpus

    _, rows = _lines(text, CORPUS_FORMAT)
    doc_rows = [r for r in rows if r["t"] == "doc"]
    record_stream = "\n".join(
        canonical_json(
            {k: v for k, v in row.items() if k != "t"}
        )
        for row in doc_rows
    )
    corpus = parse_corpus(record_stream)

    term_rows = [r for r in rows if r["t"] == "term"]
    if not term_rows:
        return corpus
    base = len(corpus.units)
    term_units = []
    for i, row in enumerate(sorted(term_rows, key=lambda r: r["id"])):
        if row["id"] != base + i:
            raise AssographError(f"term unit ids are not dense, saw {row['id']}")
        term_units.append(
            Unit(
                unit_id=row["id"],
                kind="term",
                form=" ".join(row["tokens"]),
                tokens=tuple(row["tokens"]),
                surfaces=tuple(row["surfaces"]),
            )
        )
    terms_per_doc = {
        r["doc"]: tuple(r["terms"]) for r in rows if r["t"] == "doc_terms"
    }
    variants = tuple(
        VariantLink(r["u"], r["v"], r["kind"]) for r in rows if r["t"] == "variant"
    )
    return Corpus(
        documents=corpus.documents,
        units=corpus.units + tuple(term_units),
        doc_author_units=corpus.doc_author_units,
        terms_per_doc=terms_per_doc,
        variants=variants,
    )


# -- graphs ------------------------------------------------------------------


def _unit_info(units: Mapping[object, tuple[str, str]] | None, vertex) -> tuple[str, str]:
    if units is None or vertex not in units:
        return ("unit", str(vertex))
    return units[vertex]


def _graph_body(g: ValuedGraph, units) -> list[str]:
    out = []
    for vertex in sorted(g.vertices):
        kind, form = _unit_info(units, vertex)
        out.append(canonical_json({"t": "node", "id": vertex, "kind": kind, "form": form}))
    for (u, v), value in sorted(g.edges.items()):
        out.append(canonical_json({"t": "edge", "u": u, "v": v, "a": value}))
    return out


def write_graph_file(
    g: ThresholdedGraph,
    mode: str,
    units: Mapping[object, tuple[str, str]] | None = None,
    corpus_id: str | None = None,
) -> str:
    header = {
        "format": GRAPH_FORMAT,
        "version": VERSION,
        "mode": mode,
        "s": g.s,
        "corpus": corpus_id,
    }
    return "\n".join([canonical_json(header), *_graph_body(g.base, units)]) + "\n"


def _read_graph_body(rows) -> tuple[ValuedGraph, dict]:
    vertices = []
    units = {}
    edges = {}
    for row in rows:
        if row["t"] == "node":
            vertices.append(row["id"])
            units[row["id"]] = (row["kind"], row["form"])
        elif row["t"] == "edge":
            edges[(row["u"], row["v"])] = row["a"]
    return ValuedGraph(vertices, edges), units


def read_graph_file(text: str) -> tuple[ThresholdedGraph, str, dict, str | None]:
    """Returns (graph, mode, unit info map, corpus id)."""
    header, rows = _lines(text, GRAPH_FORMAT)
    base, units = _read_graph_body(rows)
    return (
        ThresholdedGraph(base=base, s=header["s"]),
        header["mode"],
        units,
        header.get("corpus"),
    )


# -- clustering results -------------------------------------------------------


def write_result_file(
    result: ClusteringResult,
    mode: str,
    units: Mapping[object, tuple[str, str]] | None = None,
    corpus_id: str | None = None,
) -> str:
    header = {
        "format": RESULT_FORMAT,
        "version": VERSION,
        "mode": mode,
        "s": result.base.s,
        "levels": len(result.levels),
        "capped": result.capped,
        "corpus": corpus_id,
    }
    out = [canonical_json(header), *_graph_body(result.base.base, units)]
    for part in result.levels:
        out.append(canonical_json({"t": "level", "level": part.level, "merged": part.merged}))
        for cluster in part.clusters:
            out.append(
                canonical_json(
                    {
                        "t": "cluster",
                        "level": part.level,
                        "id": cluster.id,
                        "members": list(cluster.members),
                    }
                )
            )
        for u, v in sorted(part.s_edges):
            out.append(canonical_json({"t": "sedge", "level": part.level, "u": u, "v": v}))
    for level_no, red in enumerate(result.reduced_graphs, start=1):
        for (u, v), value in sorted(red.edges.items()):
            out.append(canonical_json({"t": "redge", "level": level_no, "u": u, "v": v, "a": value}))
    return "\n".join(out) + "\n"


def read_result_file(text: str) -> tuple[ClusteringResult, str, dict, str | None]:
    """Returns (result, mode, unit info map, corpus id)."""
    header, rows = _lines(text, RESULT_FORMAT)
    base_graph, units = _read_graph_body([r for r in rows if r["t"] in ("node", "edge")])
    base = ThresholdedGraph(base=base_graph, s=header["s"])

    by_level: dict[int, dict] = {}
    for row in rows:
        if row["t"] in ("level", "cluster", "sedge", "redge"):
            by_level.setdefault(row["level"], {"clusters": [], "sedges": [], "redges": [], "merged": None})
    for row in rows:
        if row["t"] == "level":
            by_level[row["level"]]["merged"] = row["merged"]
        elif row["t"] == "cluster":
            by_level[row["level"]]["clusters"].append(row)
        elif row["t"] == "sedge":
            by_level[row["level"]]["sedges"].append((row["u"], row["v"]))
        elif row["t"] == "redge":
            by_level[row["level"]]["redges"].append(((row["u"], row["v"]), row["a"]))

    levels: list[PartitionLevel] = []
    reduced: list[ThresholdedGraph] = []
    base_of = {v: (v,) for v in base.vertices}
    for level_no in sorted(by_level):
        info = by_level[level_no]
        clusters = []
        next_base = {}
        for row in info["clusters"]:
            members = tuple(row["members"])
            flat = tuple(sorted(b for m in members for b in base_of[m]))
            clusters.append(
                Cluster(id=row["id"], level=level_no, members=members, base_members=flat)
            )
            next_base[row["id"]] = flat
        clusters.sort(key=lambda c: c.base_members[0])
        part = PartitionLevel(
            level=level_no,
            clusters=tuple(clusters),
            s_edges=frozenset(tuple(e) for e in info["sedges"]),
            merged=info["merged"],
        )
        levels.append(part)
        vg = ValuedGraph((c.id for c in clusters), dict(info["redges"]))
        reduced.append(ThresholdedGraph(base=vg, s=header["s"]))
        base_of = next_base

    result = ClusteringResult(
        base=base,
        levels=tuple(levels),
        reduced_graphs=tuple(reduced),
        capped=header["capped"],
    )
    return result, header["mode"], units, header.get("corpus")


def corpus_units_info(corpus: Corpus) -> dict[int, tuple[str, str]]:
    """Unit id -> (kind, canonical form) for artifact and view builders."""
    return {u.unit_id: (u.kind, u.form) for u in corpus.units}
