"""Skip-gram-with-negative-sampling embeddings over the walk corpus.

Walks are treated as sentences: every position pairs with its neighbors
within the context window, and each pair takes one SGD step on the SGNS
objective

    loss = -log sigmoid(u.v) - sum_i log sigmoid(-u.n_i)

Negatives are drawn from the walk-corpus unigram distribution raised to
the 3/4 power; a draw that collides with the pair's positive context is
skipped for that step. The published vectors are the input matrix; output
(context) vectors are training-internal.

RNG substreams: matrix init uses SeedSequence([seed, 2]); negative
sampling uses SeedSequence([seed, 3]).

Deterministic mode processes pairs strictly sequentially (bit-reproducible
for a fixed seed on one platform). Parallel mode shards pairs across
threads that update the shared matrices without locking (benign-race SGD);
it converges statistically but is not reproducible.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, TextIO

import numba
import numpy as np

from .errors import VocabularyError
from .walks import Walk

_INIT_STREAM = 2
_NEGATIVE_STREAM = 3


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 128
    context_window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    seed: int = 42
    deterministic: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.dim < 1 or self.context_window < 1 or self.negatives < 0:
            raise ValueError("dim and context_window must be positive, negatives >= 0")
        if self.epochs < 0 or self.learning_rate <= 0:
            raise ValueError("epochs must be >= 0 and learning_rate > 0")


@dataclass
class EmbeddingMatrix:
    input_vectors: np.ndarray
    output_vectors: np.ndarray
    vocab: list[str]
    index: dict[str, int] = field(repr=False)
    epoch_losses: list[float] = field(default_factory=list)


def init_matrix(vocab: Sequence[str], cfg: EmbeddingConfig) -> EmbeddingMatrix:
    """Input rows uniform in [-0.5/d, 0.5/d], output rows zero."""
    n = len(vocab)
    if 0 < n < cfg.dim:
        warnings.warn(
            f"embedding dim {cfg.dim} exceeds vocabulary size {n}", stacklevel=2
        )
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, _INIT_STREAM]))
    inp = (rng.random((n, cfg.dim)) - 0.5) / cfg.dim
    out = np.zeros((n, cfg.dim))
    return EmbeddingMatrix(
        input_vectors=inp,
        output_vectors=out,
        vocab=list(vocab),
        index={w: i for i, w in enumerate(vocab)},
    )


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def _softplus(x: float) -> float:
    # log(1 + e^x) without overflow
    if x > 30.0:
        return x
    return math.log1p(math.exp(x))


def sgns_pair_loss(
    center_vec: np.ndarray,
    context_vec: np.ndarray,
    negative_vecs: np.ndarray,
) -> float:
    """SGNS loss for one (center, context) pair with k negatives."""
    loss = _softplus(-float(center_vec @ context_vec))
    for neg in np.atleast_2d(negative_vecs) if len(negative_vecs) else []:
        loss += _softplus(float(center_vec @ neg))
    return loss


def sgns_pair_step(
    matrix: EmbeddingMatrix,
    center: int,
    context: int,
    negatives: Sequence[int],
    lr: float,
) -> None:
    """One in-place SGD step on sgns_pair_loss.

    Touches the center row of the input matrix and the context/negative
    rows of the output matrix. Reference implementation; the bulk trainer
    applies the same update compiled.
    """
    inp, out = matrix.input_vectors, matrix.output_vectors
    u = inp[center].copy()
    accum = np.zeros_like(u)
    for target, label in [(context, 1.0), *((n, 0.0) for n in negatives)]:
        if label == 0.0 and target == context:
            continue
        s = _sigmoid(float(u @ out[target]))
        g = (label - s) * lr
        accum += g * out[target]
        out[target] += g * u
    inp[center] += accum


@numba.njit(cache=True, nogil=True)
def _train_pairs(inp, out, centers, contexts, negatives, lr0, lr_end, total_steps, offset):
    d = inp.shape[1]
    k = negatives.shape[1]
    accum = np.empty(d)
    total_loss = 0.0
    for i in range(centers.shape[0]):
        lr = lr0 + (lr_end - lr0) * ((offset + i) / total_steps)
        c = centers[i]
        for j in range(d):
            accum[j] = 0.0
        for t_idx in range(k + 1):
            if t_idx == 0:
                target = contexts[i]
                label = 1.0
            else:
                target = negatives[i, t_idx - 1]
                if target == contexts[i]:
                    continue
                label = 0.0
            f = 0.0
            for j in range(d):
                f += inp[c, j] * out[target, j]
            if f >= 0.0:
                s = 1.0 / (1.0 + math.exp(-f))
            else:
                e = math.exp(f)
                s = e / (1.0 + e)
            x = -f if label == 1.0 else f
            if x > 30.0:
                total_loss += x
            else:
                total_loss += math.log1p(math.exp(x))
            g = (label - s) * lr
            for j in range(d):
                accum[j] += g * out[target, j]
                out[target, j] += g * inp[c, j]
        for j in range(d):
            inp[c, j] += accum[j]
    return total_loss


def skipgram_pairs(
    corpus: Sequence[Walk], context_window: int
) -> tuple[np.ndarray, np.ndarray]:
    """All (center, context) id pairs, in deterministic corpus order."""
    centers = []
    contexts = []
    for walk in corpus:
        ids = walk.vertex_ids
        n = len(ids)
        for t in range(n):
            lo = max(0, t - context_window)
            hi = min(n, t + context_window + 1)
            for t2 in range(lo, hi):
                if t2 != t:
                    centers.append(ids[t])
                    contexts.append(ids[t2])
    return (
        np.array(centers, dtype=np.int64),
        np.array(contexts, dtype=np.int64),
    )


def negative_table(corpus: Sequence[Walk], vocab_size: int) -> np.ndarray:
    """Cumulative unigram^(3/4) distribution over walk-corpus counts."""
    counts = np.zeros(vocab_size)
    for walk in corpus:
        for v in walk.vertex_ids:
            counts[v] += 1.0
    weights = counts**0.75
    total = weights.sum()
    if total == 0:
        weights = np.ones(vocab_size)
        total = float(vocab_size)
    return np.cumsum(weights / total)


def sample_negatives(
    rng: np.random.Generator, cumdist: np.ndarray, n_pairs: int, k: int
) -> np.ndarray:
    draws = rng.random((n_pairs, k))
    return np.searchsorted(cumdist, draws, side="right").astype(np.int64)


def train_embeddings(
    corpus: Sequence[Walk], vocab: Sequence[str], cfg: EmbeddingConfig
) -> EmbeddingMatrix:
    """Train SGNS over the walk corpus; returns the embedding matrix.

    Mean per-pair loss of each epoch is recorded in ``epoch_losses``.
    """
    matrix = init_matrix(vocab, cfg)
    if not vocab or cfg.epochs == 0 or not corpus:
        return matrix
    centers, contexts = skipgram_pairs(corpus, cfg.context_window)
    n_pairs = centers.shape[0]
    if n_pairs == 0:
        return matrix
    cumdist = negative_table(corpus, len(vocab))
    neg_rng = np.random.default_rng(
        np.random.SeedSequence([cfg.seed, _NEGATIVE_STREAM])
    )
    total_steps = n_pairs * cfg.epochs
    lr0 = cfg.learning_rate
    lr_end = lr0 / 100.0
    for epoch in range(cfg.epochs):
        negatives = sample_negatives(neg_rng, cumdist, n_pairs, cfg.negatives)
        offset = epoch * n_pairs
        if cfg.deterministic or cfg.jobs <= 1:
            loss = _train_pairs(
                matrix.input_vectors,
                matrix.output_vectors,
                centers,
                contexts,
                negatives,
                lr0,
                lr_end,
                total_steps,
                offset,
            )
        else:
            loss = _train_pairs_parallel(matrix, centers, contexts, negatives,
                                         lr0, lr_end, total_steps, offset, cfg.jobs)
        matrix.epoch_losses.append(loss / n_pairs)
    return matrix


def _train_pairs_parallel(matrix, centers, contexts, negatives,
                          lr0, lr_end, total_steps, offset, jobs):
    chunks = np.array_split(np.arange(centers.shape[0]), jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(
                _train_pairs,
                matrix.input_vectors,
                matrix.output_vectors,
                centers[idx],
                contexts[idx],
                negatives[idx],
                lr0,
                lr_end,
                total_steps,
                offset + int(idx[0]) if idx.size else offset,
            )
            for idx in chunks
            if idx.size
        ]
        return sum(f.result() for f in futures)


def vector(matrix: EmbeddingMatrix, word: str) -> np.ndarray:
    """The published (input) vector of a vocabulary word."""
    try:
        return matrix.input_vectors[matrix.index[word]]
    except KeyError:
        raise VocabularyError(f"word not in embedding vocabulary: {word!r}") from None


def write_embeddings(matrix: EmbeddingMatrix, out: TextIO) -> None:
    """Debug dump: header '<vocab> <dim>', then 'word v1 ... vd' rows."""
    n, d = matrix.input_vectors.shape
    out.write(f"{n} {d}\n")
    for i, word in enumerate(matrix.vocab):
        coords = " ".join(f"{x:.6f}" for x in matrix.input_vectors[i])
        out.write(f"{word} {coords}\n")
