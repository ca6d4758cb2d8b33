"""Per-document word co-occurrence graph.

Vertices are the unique normalized forms of filter-passing tokens; an edge
weight counts how often two distinct words co-occur within the window,
measured over raw token positions (filtered-out tokens still occupy
positions). A window of w tokens spans position offsets 0..w-1, i.e. two
occurrences at positions i < j co-occur iff j - i < w.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConfigError, GraphLookupError
from .text import Token


@dataclass
class WordGraph:
    vertices: list[str]
    adjacency: list[dict[int, int]]
    total_edge_weight: int
    window: int
    index: dict[str, int] = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class GraphStats:
    num_vertices: int
    num_edges: int
    total_weight: int
    max_degree: int


def build_graph(
    tokens: Sequence[Token], mask: Sequence[bool], window: int
) -> WordGraph:
    if window < 2:
        raise ConfigError(f"co-occurrence window must be >= 2, got {window}")
    if len(mask) != len(tokens):
        raise ValueError("mask length does not match token sequence")

    vertices: list[str] = []
    index: dict[str, int] = {}
    words = []  # (position index, vertex id) for mask-true tokens
    for i, (token, keep) in enumerate(zip(tokens, mask)):
        if not keep:
            continue
        vid = index.get(token.normalized)
        if vid is None:
            vid = len(vertices)
            index[token.normalized] = vid
            vertices.append(token.normalized)
        words.append((i, vid))

    adjacency: list[dict[int, int]] = [dict() for _ in vertices]
    total = 0
    for a in range(len(words)):
        i, u = words[a]
        for b in range(a + 1, len(words)):
            j, v = words[b]
            if j - i >= window:
                break
            if u == v:
                continue
            adjacency[u][v] = adjacency[u].get(v, 0) + 1
            adjacency[v][u] = adjacency[v].get(u, 0) + 1
            total += 1
    return WordGraph(
        vertices=vertices,
        adjacency=adjacency,
        total_edge_weight=total,
        window=window,
        index=index,
    )


def neighbors(g: WordGraph, v: int) -> list[tuple[int, int]]:
    """Neighbors of v as (vertex id, weight), ascending by id."""
    if not 0 <= v < g.num_vertices:
        raise GraphLookupError(f"vertex id {v} out of range (|V|={g.num_vertices})")
    return sorted(g.adjacency[v].items())


def graph_stats(g: WordGraph) -> GraphStats:
    num_edges = sum(len(adj) for adj in g.adjacency) // 2
    max_degree = max((len(adj) for adj in g.adjacency), default=0)
    return GraphStats(
        num_vertices=g.num_vertices,
        num_edges=num_edges,
        total_weight=g.total_edge_weight,
        max_degree=max_degree,
    )


def edge_list(g: WordGraph) -> list[tuple[str, str, int]]:
    """Undirected edges as (word_u, word_v, weight), word_u < word_v, sorted."""
    edges = []
    for u, adj in enumerate(g.adjacency):
        for v, w in adj.items():
            if u < v:
                wu, wv = g.vertices[u], g.vertices[v]
                if wu > wv:
                    wu, wv = wv, wu
                edges.append((wu, wv, w))
    return sorted(edges)
