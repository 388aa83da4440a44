"""Persistence, exports and the HTTP service."""

from .artifacts import (
    content_id,
    read_corpus_file,
    read_graph_file,
    read_result_file,
    write_atomic,
    write_corpus_file,
    write_graph_file,
    write_result_file,
)
from .view import GraphView, build_graph_view
from .exports import export_dot, export_gdl
