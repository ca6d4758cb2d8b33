"""Keyphrase extraction via word-graph random-walk embeddings.

Pipeline: POS-filtered co-occurrence graph per document, weight-biased
random walks as training text, skip-gram negative-sampling embeddings,
mean-vector phrase features, Gaussian Naive Bayes confidence ranking,
and a document-level cross-validation harness.
"""

from .candidates import CandidatePhrase, extract_candidates, label_candidates, phrase_vector
from .classifier import GnbModel, fit, load_model, predict_proba, rank_candidates, save_model, top_k
from .config import PipelineConfig, make_config, parse_config_file
from .embedding import EmbeddingConfig, EmbeddingMatrix, train_embeddings, vector
from .evaluation import (
    CvPlan,
    EvalResult,
    cross_validate,
    frequency_baseline,
    make_folds,
    random_baseline,
    score_document,
)
from .graph import WordGraph, build_graph, graph_stats, neighbors
from .pipeline import document_candidates, extract_keyphrases, train_model
from .text import (
    Document,
    PosFilter,
    Token,
    candidate_word_mask,
    load_corpus,
    load_document,
    pos_tag,
    stem,
    stem_phrase,
    tokenize,
)
from .walks import Walk, WalkConfig, generate_corpus, sample_walk, transition_distribution

__version__ = "0.1.0"

__all__ = [
    "CandidatePhrase", "extract_candidates", "label_candidates", "phrase_vector",
    "GnbModel", "fit", "load_model", "predict_proba", "rank_candidates",
    "save_model", "top_k",
    "PipelineConfig", "make_config", "parse_config_file",
    "EmbeddingConfig", "EmbeddingMatrix", "train_embeddings", "vector",
    "CvPlan", "EvalResult", "cross_validate", "frequency_baseline",
    "make_folds", "random_baseline", "score_document",
    "WordGraph", "build_graph", "graph_stats", "neighbors",
    "document_candidates", "extract_keyphrases", "train_model",
    "Document", "PosFilter", "Token", "candidate_word_mask", "load_corpus",
    "load_document", "pos_tag", "stem", "stem_phrase", "tokenize",
    "Walk", "WalkConfig", "generate_corpus", "sample_walk",
    "transition_distribution",
]
