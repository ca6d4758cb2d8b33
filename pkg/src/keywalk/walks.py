"""Weight-biased random walks over the word graph.

Next-step probabilities at a vertex are proportional to incident edge
weights (normalized per source vertex). Every (start vertex, walk index)
pair draws from its own RNG substream, so the corpus is reproducible
independently of sampling order:

    substream(v, j) = PCG64 seeded with SeedSequence([seed, 1, v, j])
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

import numpy as np

from .errors import GraphLookupError
from .graph import WordGraph

_WALK_STREAM = 1


@dataclass(frozen=True)
class WalkConfig:
    walks_per_node: int = 40
    walk_length: int = 8
    seed: int = 42

    def __post_init__(self):
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be positive")
        if self.walk_length < 2:
            raise ValueError("walk_length must be >= 2")


@dataclass(frozen=True)
class Walk:
    vertex_ids: tuple[int, ...]


def transition_distribution(
    g: WordGraph, v: int
) -> tuple[np.ndarray, np.ndarray]:
    """Neighbor ids and their transition probabilities for vertex v.

    Probability of neighbor x is weight(v,x) / sum of weights at v.
    Isolated vertices get two empty arrays.
    """
    if not 0 <= v < g.num_vertices:
        raise GraphLookupError(f"vertex id {v} out of range (|V|={g.num_vertices})")
    adj = g.adjacency[v]
    if not adj:
        return np.empty(0, dtype=np.int64), np.empty(0)
    ids = np.array(sorted(adj), dtype=np.int64)
    weights = np.array([adj[i] for i in ids], dtype=np.float64)
    return ids, weights / weights.sum()


def _neighbor_cache(g: WordGraph):
    cache: list[Optional[tuple[np.ndarray, np.ndarray]]] = [None] * g.num_vertices

    def get(v: int):
        entry = cache[v]
        if entry is None:
            adj = g.adjacency[v]
            ids = np.array(sorted(adj), dtype=np.int64)
            cum = np.cumsum(np.array([adj[i] for i in ids], dtype=np.float64))
            entry = (ids, cum)
            cache[v] = entry
        return entry

    return get


def _sample(g, start, length, rng, get_neighbors) -> Walk:
    path = [start]
    current = start
    for _ in range(length - 1):
        ids, cum = get_neighbors(current)
        if ids.size == 0:
            break  # isolated vertex: the walk ends early
        r = rng.random() * cum[-1]
        current = int(ids[np.searchsorted(cum, r, side="right")])
        path.append(current)
    return Walk(vertex_ids=tuple(path))


def sample_walk(
    g: WordGraph, start: int, cfg: WalkConfig, rng: np.random.Generator
) -> Walk:
    """One biased walk from ``start``, drawing steps from ``rng``."""
    if not 0 <= start < g.num_vertices:
        raise GraphLookupError(
            f"vertex id {start} out of range (|V|={g.num_vertices})"
        )
    return _sample(g, start, cfg.walk_length, rng, _neighbor_cache(g))


def walk_rng(cfg: WalkConfig, vertex: int, walk_index: int) -> np.random.Generator:
    """The RNG substream for one (vertex, walk index) pair."""
    return np.random.default_rng(
        np.random.SeedSequence([cfg.seed, _WALK_STREAM, vertex, walk_index])
    )


def generate_corpus(g: WordGraph, cfg: WalkConfig) -> list[Walk]:
    """walks_per_node walks per vertex, vertex-major, walk-index-minor."""
    get_neighbors = _neighbor_cache(g)
    corpus = []
    for v in range(g.num_vertices):
        for j in range(cfg.walks_per_node):
            rng = walk_rng(cfg, v, j)
            corpus.append(_sample(g, v, cfg.walk_length, rng, get_neighbors))
    return corpus


def write_walks(corpus: Sequence[Walk], g: WordGraph, out: TextIO) -> None:
    """Debug dump: one walk per line, vertices as space-separated words."""
    for walk in corpus:
        out.write(" ".join(g.vertices[v] for v in walk.vertex_ids) + "\n")
