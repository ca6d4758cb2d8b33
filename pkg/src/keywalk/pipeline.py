"""Per-document pipeline: mask -> graph -> walks -> embeddings -> candidates.

Embeddings are trained per document (the word graph is per document); only
the Gaussian Naive Bayes classifier is trained across documents. Each
document derives its walk/embedding RNG substreams from the global seed
combined with a sha256 of its raw text, so identical documents produce
identical features regardless of id or processing order.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import candidates as cand_mod
from . import classifier as gnb
from . import graph as graph_mod
from . import walks as walks_mod
from .candidates import CandidatePhrase
from .config import PipelineConfig
from .embedding import EmbeddingConfig, EmbeddingMatrix, train_embeddings
from .errors import CorpusError
from .text import Document, PosFilter, candidate_word_mask


def document_entropy(doc: Document) -> int:
    """Stable 64-bit value derived from the raw document text."""
    digest = hashlib.sha256(doc.text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _derived_seed(cfg: PipelineConfig, doc: Document) -> int:
    words = np.random.SeedSequence([cfg.seed, document_entropy(doc)]).generate_state(2)
    return int(words[0]) << 32 | int(words[1])


def document_mask(doc: Document, cfg: PipelineConfig) -> list[bool]:
    return candidate_word_mask(doc.tokens, PosFilter(frozenset(cfg.pos_allowed)))


def build_document_graph(doc: Document, cfg: PipelineConfig) -> graph_mod.WordGraph:
    return graph_mod.build_graph(doc.tokens, document_mask(doc, cfg), cfg.window)


def document_embeddings(
    doc: Document, cfg: PipelineConfig, g: Optional[graph_mod.WordGraph] = None
) -> EmbeddingMatrix:
    if g is None:
        g = build_document_graph(doc, cfg)
    seed = _derived_seed(cfg, doc)
    corpus = walks_mod.generate_corpus(
        g,
        walks_mod.WalkConfig(
            walks_per_node=cfg.walks_per_node,
            walk_length=cfg.walk_length,
            seed=seed,
        ),
    )
    return train_embeddings(
        corpus,
        g.vertices,
        EmbeddingConfig(
            dim=cfg.dim,
            context_window=cfg.context_window,
            negatives=cfg.negatives,
            epochs=cfg.epochs,
            learning_rate=cfg.learning_rate,
            seed=seed,
            deterministic=cfg.deterministic,
            jobs=cfg.jobs,
        ),
    )


def document_candidates(
    doc: Document, cfg: PipelineConfig, with_features: bool = True
) -> list[CandidatePhrase]:
    """Candidates of one document, featurized and labeled when gold exists."""
    mask = document_mask(doc, cfg)
    cands = cand_mod.extract_candidates(
        doc.tokens, mask, cfg.max_phrase_len, cfg.candidate_mode
    )
    if with_features and cands:
        g = graph_mod.build_graph(doc.tokens, mask, cfg.window)
        emb = document_embeddings(doc, cfg, g)
        cand_mod.attach_features(cands, emb)
    if doc.gold:
        cand_mod.label_candidates(cands, doc.gold)
    return cands


def _worker(args):
    doc, cfg, with_features = args
    return doc.id, document_candidates(doc, cfg, with_features)


def corpus_candidates(
    corpus: Sequence[Document], cfg: PipelineConfig, with_features: bool = True
) -> dict[str, list[CandidatePhrase]]:
    """Candidates for every document; parallel across documents if jobs > 1."""
    if cfg.jobs > 1 and len(corpus) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = pool.map(
                _worker, [(doc, cfg, with_features) for doc in corpus]
            )
            return dict(results)
    return {doc.id: document_candidates(doc, cfg, with_features) for doc in corpus}


def train_model(corpus: Sequence[Document], cfg: PipelineConfig) -> gnb.GnbModel:
    """Fit the GNB ranker on the labeled candidates of a gold corpus."""
    for doc in corpus:
        if not doc.gold:
            raise CorpusError(f"document {doc.id!r} has no gold keyphrases")
    per_doc = corpus_candidates(corpus, cfg)
    features = []
    labels = []
    for doc in corpus:
        for c in per_doc[doc.id]:
            features.append(c.feature)
            labels.append(c.label)
    if not features:
        raise CorpusError("corpus produced no candidates")
    return gnb.fit(
        np.array(features), labels, cfg.var_smoothing, config=cfg.to_dict()
    )


def extract_keyphrases(
    doc: Document, model: gnb.GnbModel, cfg: PipelineConfig
) -> list[CandidatePhrase]:
    """Top-k ranked candidates of one document under a trained model."""
    cands = document_candidates(doc, cfg)
    if not cands:
        return []
    ranked = gnb.rank_candidates(model, cands)
    return gnb.top_k(ranked, cfg.top_k)
