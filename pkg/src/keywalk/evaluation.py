"""Scoring against gold keyphrases and document-level cross-validation.

Metrics are macro-averaged: the aggregate P/R/F1 are arithmetic means of
per-document values. Matching is stemmed exact match. By default the
precision denominator is min(k, number of predictions) so documents with
fewer than k candidates are not penalized; strict_at_k switches to /k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import classifier as gnb
from .config import PipelineConfig
from .errors import ConfigError, EvaluationError
from .pipeline import corpus_candidates, document_entropy
from .text import Document, stem_phrase

_FOLD_STREAM = 4
_BASELINE_STREAM = 5


@dataclass(frozen=True)
class EvalResult:
    precision: float
    recall: float
    f1: float
    per_document: tuple[tuple[str, float, float, float], ...]
    k: int


@dataclass(frozen=True)
class CvPlan:
    folds: int
    seed: int
    assignment: dict[str, int]


def _f1(p: float, r: float) -> float:
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def score_document(
    predicted: Sequence[str],
    gold: Iterable[str],
    k: int = 10,
    strict_at_k: bool = False,
) -> tuple[float, float, float]:
    """(P, R, F1) of a ranked prediction list against a stemmed gold set.

    Both sides must already be stemmed forms; duplicates beyond the first
    predicted occurrence are ignored.
    """
    gold_set = set(gold)
    if not gold_set:
        raise EvaluationError("cannot score a document with an empty gold set")
    deduped = list(dict.fromkeys(predicted))
    top = deduped[:k]
    hits = sum(1 for p in top if p in gold_set)
    denom = k if strict_at_k else min(k, len(deduped))
    precision = hits / denom if denom else 0.0
    recall = hits / len(gold_set)
    return precision, recall, _f1(precision, recall)


def make_folds(
    corpus: Sequence[Document], folds: int = 10, seed: int = 42
) -> CvPlan:
    """Seeded shuffle of document ids, then round-robin fold assignment."""
    if folds < 1:
        raise ConfigError("folds must be >= 1")
    if len(corpus) < folds:
        raise ConfigError(
            f"cannot make {folds} folds from {len(corpus)} documents"
        )
    ids = sorted(doc.id for doc in corpus)
    rng = np.random.default_rng(np.random.SeedSequence([seed, _FOLD_STREAM]))
    rng.shuffle(ids)
    return CvPlan(
        folds=folds,
        seed=seed,
        assignment={doc_id: i % folds for i, doc_id in enumerate(ids)},
    )


def _aggregate(rows, k) -> EvalResult:
    ps = [r[1] for r in rows]
    rs = [r[2] for r in rows]
    fs = [r[3] for r in rows]
    return EvalResult(
        precision=float(np.mean(ps)) if ps else 0.0,
        recall=float(np.mean(rs)) if rs else 0.0,
        f1=float(np.mean(fs)) if fs else 0.0,
        per_document=tuple(rows),
        k=k,
    )


def _check_gold(corpus):
    for doc in corpus:
        if not doc.gold:
            raise EvaluationError(f"document {doc.id!r} has no gold keyphrases")


def cross_validate(
    corpus: Sequence[Document], cfg: PipelineConfig, plan: CvPlan
) -> EvalResult:
    """Document-level k-fold CV of the full pipeline.

    Per-document graphs/walks/embeddings are computed once (they never mix
    documents); only the GNB classifier is refit per fold on the training
    folds' candidates.
    """
    _check_gold(corpus)
    if plan.folds < 2:
        raise ConfigError("cross-validation needs at least 2 folds")
    missing = [doc.id for doc in corpus if doc.id not in plan.assignment]
    if missing:
        raise ConfigError(f"fold plan is missing documents: {missing}")

    per_doc = corpus_candidates(corpus, cfg)
    fold_models = {}
    for fold in sorted(set(plan.assignment[doc.id] for doc in corpus)):
        features = []
        labels = []
        for other in corpus:
            if plan.assignment[other.id] == fold:
                continue
            for c in per_doc[other.id]:
                features.append(c.feature)
                labels.append(c.label)
        fold_models[fold] = gnb.fit(np.array(features), labels, cfg.var_smoothing)

    rows = []
    for doc in corpus:
        model = fold_models[plan.assignment[doc.id]]
        cands = per_doc[doc.id]
        if cands:
            ranked = gnb.rank_candidates(model, cands)
            predicted = [c.stemmed_form for c in ranked]
        else:
            predicted = []
        gold = {stem_phrase(g) for g in doc.gold}
        p, r, f = score_document(predicted, gold, cfg.top_k, cfg.strict_at_k)
        rows.append((doc.id, p, r, f))
    return _aggregate(rows, cfg.top_k)


def random_baseline(
    corpus: Sequence[Document], cfg: PipelineConfig
) -> EvalResult:
    """Seeded random ranking of each document's own candidates."""
    _check_gold(corpus)
    per_doc = corpus_candidates(corpus, cfg, with_features=False)
    rows = []
    for doc in corpus:
        cands = per_doc[doc.id]
        order = np.arange(len(cands))
        rng = np.random.default_rng(
            np.random.SeedSequence(
                [cfg.seed, _BASELINE_STREAM, document_entropy(doc)]
            )
        )
        rng.shuffle(order)
        predicted = [cands[i].stemmed_form for i in order]
        gold = {stem_phrase(g) for g in doc.gold}
        p, r, f = score_document(predicted, gold, cfg.top_k, cfg.strict_at_k)
        rows.append((doc.id, p, r, f))
    return _aggregate(rows, cfg.top_k)


def frequency_baseline(
    corpus: Sequence[Document], cfg: PipelineConfig
) -> EvalResult:
    """Rank each document's candidates by raw occurrence count."""
    _check_gold(corpus)
    per_doc = corpus_candidates(corpus, cfg, with_features=False)
    rows = []
    for doc in corpus:
        ranked = sorted(
            per_doc[doc.id],
            key=lambda c: (-c.occurrences, c.first_position, c.stemmed_form),
        )
        predicted = [c.stemmed_form for c in ranked]
        gold = {stem_phrase(g) for g in doc.gold}
        p, r, f = score_document(predicted, gold, cfg.top_k, cfg.strict_at_k)
        rows.append((doc.id, p, r, f))
    return _aggregate(rows, cfg.top_k)


def write_report_tsv(result: EvalResult, out: TextIO) -> None:
    """Per-document rows plus a final MEAN row."""
    for doc_id, p, r, f in result.per_document:
        out.write(f"{doc_id}\t{p:.6f}\t{r:.6f}\t{f:.6f}\n")
    out.write(f"MEAN\t{result.precision:.6f}\t{result.recall:.6f}\t{result.f1:.6f}\n")


def write_report_json(
    result: EvalResult, cfg: PipelineConfig, path: Path
) -> None:
    payload = {
        "config": cfg.to_dict(),
        "k": result.k,
        "precision": result.precision,
        "recall": result.recall,
        "f1": result.f1,
        "per_document": [
            {"doc_id": d, "precision": p, "recall": r, "f1": f}
            for d, p, r, f in result.per_document
        ],
    }
    Path(path).write_bytes(
        (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("utf-8")
    )
