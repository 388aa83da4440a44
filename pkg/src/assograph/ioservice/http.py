"""HTTP API over content-addressed corpus and clustering artifacts.

Artifacts are immutable files named by the digest of their canonical
serialization, so identical requests always return identical bodies and
writes can never race: rebuilding the same graph reproduces the same id.
Errors carry a machine-readable ``{"error": {"code", "message"}}`` body.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..analysis import betweenness, cluster_subgraph, strongest_path, unit_documents
from ..corpus import Corpus, corpus_stats, parse_corpus, register_terms, with_variants
from ..cpcl import cpcl
from ..errors import (
    AssographError,
    DuplicateDocumentError,
    RecordParseError,
    UnknownClusterError,
    UnknownDocumentError,
    UnknownUnitError,
)
from ..graph import (
    COAUTHOR,
    DEFAULT_THRESHOLD,
    TERM_AUTHOR,
    apply_variant_valuation,
    build_hypergraph,
    derive_graph,
    threshold,
)
from ..termvar import extract_corpus_terms, find_variants
from .artifacts import (
    content_id,
    corpus_units_info,
    read_corpus_file,
    read_result_file,
    write_atomic,
    write_corpus_file,
    write_result_file,
)
from .exports import export_dot, export_gdl
from .view import build_graph_view, unit_ref


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def _not_found(code: str, message: str) -> ApiError:
    return ApiError(404, code, message)


@dataclass
class ServiceConfig:
    data_dir: Path
    max_documents: int = 50_000
    preload: tuple[Path, ...] = field(default_factory=tuple)

    @classmethod
    def from_env(cls, data_dir: str | Path | None = None) -> "ServiceConfig":
        root = Path(data_dir or os.environ.get("ASSOGRAPH_DATA", "./assograph-data"))
        return cls(data_dir=root)


class Store:
    """Content-addressed artifact store with an in-process cache."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.corpora_dir = config.data_dir / "corpora"
        self.results_dir = config.data_dir / "results"
        self._corpora: dict[str, Corpus] = {}
        self._results: dict[str, tuple] = {}

    def put_corpus(self, corpus: Corpus) -> str:
        text = write_corpus_file(corpus)
        cid = content_id(text)
        path = self.corpora_dir / f"{cid}.corpus"
        if not path.exists():
            write_atomic(path, text)
        self._corpora[cid] = corpus
        return cid

    def get_corpus(self, cid: str) -> Corpus:
        if cid not in self._corpora:
            path = self.corpora_dir / f"{cid}.corpus"
            if not path.is_file():
                raise _not_found("unknown_corpus", f"no corpus with id {cid!r}")
            self._corpora[cid] = read_corpus_file(path.read_text(encoding="utf-8"))
        return self._corpora[cid]

    def put_result(self, result, mode, units, corpus_id) -> str:
        text = write_result_file(result, mode, units=units, corpus_id=corpus_id)
        gid = content_id(text)
        path = self.results_dir / f"{gid}.result"
        if not path.exists():
            write_atomic(path, text)
        self._results[gid] = (result, mode, units, corpus_id)
        return gid

    def get_result(self, gid: str) -> tuple:
        if gid not in self._results:
            path = self.results_dir / f"{gid}.result"
            if not path.is_file():
                raise _not_found("unknown_graph", f"no graph with id {gid!r}")
            self._results[gid] = read_result_file(path.read_text(encoding="utf-8"))
        return self._results[gid]


class BuildRequest(BaseModel):
    mode: str = COAUTHOR
    threshold: float | None = None
    levels: int | None = None
    term_mode: str = "keywords"
    stopwords: list[str] | None = None
    synonyms: list[tuple[str, str]] = []


def build_artifacts(store: Store, corpus_id: str, req: BuildRequest) -> dict:
    """Run the extract/derive/threshold/cluster pipeline and store the result."""
    corpus = store.get_corpus(corpus_id)
    if req.mode not in (COAUTHOR, TERM_AUTHOR):
        raise ApiError(400, "bad_mode", f"mode must be {COAUTHOR!r} or {TERM_AUTHOR!r}")
    if req.levels is not None and req.levels < 1:
        raise ApiError(400, "bad_levels", "levels must be >= 1")
    if len(corpus.documents) > store.config.max_documents:
        raise ApiError(413, "too_large", "corpus exceeds the synchronous build limit")

    effective_corpus_id = corpus_id
    variants = ()
    if req.mode == TERM_AUTHOR:
        if not corpus.term_units:
            stop = None if req.stopwords is None else frozenset(w.lower() for w in req.stopwords)
            per_doc = extract_corpus_terms(corpus, req.term_mode, stop)
            corpus = register_terms(corpus, per_doc)
            corpus = with_variants(corpus, find_variants(corpus.term_units, req.synonyms))
            effective_corpus_id = store.put_corpus(corpus)
        variants = corpus.variants

    graph = derive_graph(build_hypergraph(corpus, req.mode))
    if req.mode == TERM_AUTHOR:
        graph = apply_variant_valuation(graph, variants)
    s = DEFAULT_THRESHOLD[req.mode] if req.threshold is None else req.threshold
    tg = threshold(graph, s)
    result = cpcl(tg, max_levels=req.levels)
    units = corpus_units_info(corpus)
    gid = store.put_result(result, req.mode, units, effective_corpus_id)
    return {
        "graph_id": gid,
        "corpus_id": effective_corpus_id,
        "mode": req.mode,
        "threshold": s,
        "levels": len(result.levels),
        "capped": result.capped,
    }


def _document_payload(corpus: Corpus, doc_id: str) -> dict:
    doc = corpus.document(doc_id)
    units = [
        {"id": unit_ref(u), "kind": corpus.unit(u).kind, "label": corpus.unit(u).form}
        for u in sorted(corpus.doc_units(doc_id))
    ]
    return {
        "id": doc.doc_id,
        "title": doc.title,
        "year": doc.year,
        "authors": list(doc.raw_authors),
        "keywords": list(doc.keywords) if doc.keywords is not None else None,
        "abstract": doc.abstract_text,
        "tags": list(doc.source_tags) if doc.source_tags is not None else None,
        "units": units,
    }


def _parse_unit_ref(corpus: Corpus, ref: str) -> int:
    raw = ref[1:] if ref.startswith("u") else ref
    try:
        unit_id = int(raw)
    except ValueError:
        raise ApiError(400, "bad_unit", f"unit id {ref!r} is not numeric") from None
    corpus.unit(unit_id)
    return unit_id


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    store = Store(config)
    app = FastAPI(title="assograph", version="0.1.0")
    # the explorer UI is served as static files from another origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "invalid_request", "message": str(exc.errors()[:1])}},
        )

    @app.post("/corpora", status_code=201)
    async def upload_corpus(request: Request):
        body = (await request.body()).decode("utf-8")
        try:
            corpus = parse_corpus(body)
        except (RecordParseError, DuplicateDocumentError) as exc:
            raise ApiError(400, "malformed_corpus", str(exc)) from exc
        if len(corpus.documents) > config.max_documents:
            raise ApiError(413, "too_large", "corpus exceeds the synchronous build limit")
        cid = store.put_corpus(corpus)
        stats = corpus_stats(corpus)
        return {
            "id": cid,
            "stats": {
                "documents": stats.documents,
                "authors": stats.authors,
                "terms": stats.terms,
                "years": {str(y): n for y, n in stats.years.items()},
            },
        }

    @app.get("/corpora/{cid}/stats")
    async def get_stats(cid: str):
        stats = corpus_stats(store.get_corpus(cid))
        return {
            "documents": stats.documents,
            "authors": stats.authors,
            "terms": stats.terms,
            "years": {str(y): n for y, n in stats.years.items()},
        }

    @app.post("/corpora/{cid}/graphs", status_code=201)
    async def build_graph(cid: str, req: BuildRequest):
        try:
            return build_artifacts(store, cid, req)
        except AssographError as exc:
            raise ApiError(400, "build_failed", str(exc)) from exc

    @app.get("/corpora/{cid}/units/{uid}/documents")
    async def get_unit_documents(cid: str, uid: str):
        corpus = store.get_corpus(cid)
        try:
            unit_id = _parse_unit_ref(corpus, uid)
        except UnknownUnitError as exc:
            raise _not_found("unknown_unit", str(exc)) from exc
        docs = unit_documents(corpus, unit_id)
        return {
            "unit": unit_ref(unit_id),
            "label": corpus.unit(unit_id).form,
            "kind": corpus.unit(unit_id).kind,
            "documents": [_document_payload(corpus, d) for d in docs],
        }

    @app.get("/corpora/{cid}/documents/{doc_id}")
    async def get_document(cid: str, doc_id: str):
        corpus = store.get_corpus(cid)
        try:
            return _document_payload(corpus, doc_id)
        except UnknownDocumentError as exc:
            raise _not_found("unknown_document", str(exc)) from exc

    def load_view(gid: str):
        result, mode, units, corpus_id = store.get_result(gid)
        doc_index = None
        if corpus_id is not None:
            corpus = store.get_corpus(corpus_id)
            doc_index = {
                v: unit_documents(corpus, v)
                for v in result.base.vertices
            }
        return result, mode, units, corpus_id, doc_index

    @app.get("/graphs/{gid}")
    async def get_graph(gid: str):
        result, mode, units, corpus_id, doc_index = load_view(gid)
        view = build_graph_view(
            result.base,
            result,
            mode,
            units={v: units[v] for v in result.base.vertices if v in units},
            doc_index=doc_index,
            graph_id=gid,
            corpus_id=corpus_id,
        )
        return JSONResponse(content=view.to_dict())

    @app.get("/graphs/{gid}/clusters/{cluster_id}")
    async def get_cluster(gid: str, cluster_id: str):
        result, mode, units, corpus_id, _ = load_view(gid)
        try:
            detail = cluster_subgraph(result.base, result, cluster_id)
        except UnknownClusterError as exc:
            raise _not_found("unknown_cluster", str(exc)) from exc

        def label(vertex):
            return units.get(vertex, ("unit", str(vertex)))[1]

        return {
            "cluster": cluster_id,
            "level": result.cluster(cluster_id).level,
            "members": [
                {"id": unit_ref(m), "label": label(m)} for m in detail.members
            ],
            "internal_edges": [
                {
                    "source": unit_ref(u),
                    "target": unit_ref(v),
                    "value": value,
                    "s_edge": (u, v) in detail.skeleton,
                }
                for (u, v), value in sorted(detail.internal.edges.items())
            ],
            "boundary_edges": [
                {
                    "source": unit_ref(b.inside),
                    "target": unit_ref(b.outside),
                    "target_cluster": b.outside_cluster,
                    "value": b.value,
                }
                for b in detail.boundary
            ],
        }

    @app.get("/graphs/{gid}/paths")
    async def get_path(gid: str, request: Request):
        params = request.query_params
        if "from" not in params or "to" not in params:
            raise ApiError(400, "invalid_request", "both 'from' and 'to' are required")
        result, mode, units, corpus_id, _ = load_view(gid)

        def resolve(ref: str):
            raw = ref[1:] if ref.startswith("u") else ref
            try:
                vertex = int(raw)
            except ValueError:
                raise _not_found("unknown_unit", f"unknown unit {ref!r}") from None
            if vertex not in result.base.vertices:
                raise _not_found("unknown_unit", f"unknown unit {ref!r}")
            return vertex

        u, v = resolve(params["from"]), resolve(params["to"])
        path = strongest_path(result.base, u, v)
        if path is None:
            return {"found": False, "nodes": None, "bottleneck": None}
        return {
            "found": True,
            "nodes": [unit_ref(n) for n in path.nodes],
            "bottleneck": path.bottleneck,
        }

    @app.get("/graphs/{gid}/centrality")
    async def get_centrality(gid: str):
        result, *_ = store.get_result(gid)
        scores = betweenness(result.base)
        return {"scores": {unit_ref(v): s for v, s in scores.items()}}

    @app.get("/graphs/{gid}/export")
    async def get_export(gid: str, format: str = "gdl", fold: str = ""):
        result, mode, units, corpus_id, _ = load_view(gid)
        view = build_graph_view(
            result.base,
            result,
            mode,
            units={v: units[v] for v in result.base.vertices if v in units},
            graph_id=gid,
            corpus_id=corpus_id,
        )
        folded = frozenset(f for f in fold.split(",") if f)
        try:
            if format == "gdl":
                return JSONResponse(content={"format": "gdl", "text": export_gdl(view, folded)})
            if format == "dot":
                return JSONResponse(content={"format": "dot", "text": export_dot(view)})
        except AssographError as exc:
            raise ApiError(400, "bad_fold", str(exc)) from exc
        raise ApiError(400, "bad_format", "format must be 'gdl' or 'dot'")

    return app


def serve(config: ServiceConfig, host: str = "127.0.0.1", port: int | None = None):
    """Run the API with uvicorn. Port falls back to ASSOGRAPH_PORT, then 8040."""
    import uvicorn

    if port is None:
        port = int(os.environ.get("ASSOGRAPH_PORT", "8040"))
    uvicorn.run(create_app(config), host=host, port=port)
