import warnings

import pytest

from keywalk.graph import WordGraph
from keywalk.text import Token, stem

# Small graphs in tests routinely have |V| < 128; the dim warning is expected.
warnings.filterwarnings("ignore", message="embedding dim .* exceeds vocabulary size")

# One line per acceptance criterion, echoed after the test run (the
# acceptance tests append here; pytest captures their stdout otherwise).
acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


def make_tokens(words, pos="NOUN"):
    """Token sequence from plain words, all in one sentence."""
    return tuple(
        Token(
            surface=w,
            normalized=w.lower(),
            stem=stem(w.lower()),
            pos=(pos[i] if isinstance(pos, (list, tuple)) else pos),
            position=i,
            sentence=0,
        )
        for i, w in enumerate(words)
    )


def make_graph(vertices, edges, window=10):
    """WordGraph from an explicit weighted edge dict {(u, v): w}."""
    adjacency = [dict() for _ in vertices]
    total = 0
    for (u, v), w in edges.items():
        adjacency[u][v] = w
        adjacency[v][u] = w
        total += w
    return WordGraph(
        vertices=list(vertices),
        adjacency=adjacency,
        total_edge_weight=total,
        window=window,
        index={word: i for i, word in enumerate(vertices)},
    )


@pytest.fixture
def small_config():
    """Pipeline config sized for fast tests."""
    from keywalk.config import PipelineConfig

    return PipelineConfig(
        walks_per_node=6,
        walk_length=5,
        dim=16,
        epochs=2,
        folds=2,
    )
