import json

import pytest

from assograph import ThresholdedGraph, ValuedGraph, parse_corpus

ACCEPTANCE_OUTCOMES = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    criterion = report.nodeid.split("::")[-1].removeprefix("test_")
    ACCEPTANCE_OUTCOMES[criterion] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, outcome in ACCEPTANCE_OUTCOMES.items():
        terminalreporter.write_line(f"ACCEPTANCE {criterion}: {outcome.upper()}")


def records_to_stream(records):
    return "\n".join(json.dumps(r) for r in records) + "\n"


THREE_DOC_RECORDS = [
    {"id": "D1", "title": "Alloy interfaces", "authors": ["Ames, A.", "Bloom, B."], "year": 2001},
    {"id": "D2", "title": "Grain growth", "authors": ["Ames, A.", "Bloom, B.", "Cruz, C."], "year": 2002},
    {"id": "D3", "title": "Film stress", "authors": ["Ames, A.", "Cruz, C."], "year": 2002},
]


@pytest.fixture
def three_doc_corpus():
    # unit ids follow canonical-form order: AMES=0, BLOOM=1, CRUZ=2
    return parse_corpus(records_to_stream(THREE_DOC_RECORDS))


def tgraph(edges, vertices=None, s=0.0):
    verts = set(vertices or ())
    for u, v in edges:
        verts.update((u, v))
    return ThresholdedGraph(base=ValuedGraph(verts, edges), s=s)


@pytest.fixture
def path_graph():
    # a=0, b=1, c=2, d=3
    return tgraph({(0, 1): 0.9, (1, 2): 0.5, (2, 3): 0.8})


@pytest.fixture
def star_graph():
    # center x=0; leaves hi=1 (0.9), md=2 (0.5), lo=3 (0.3)
    return tgraph({(0, 1): 0.9, (0, 2): 0.5, (0, 3): 0.3})


@pytest.fixture
def tie_triangle():
    return tgraph({(0, 1): 0.5, (1, 2): 0.5, (0, 2): 0.5})
