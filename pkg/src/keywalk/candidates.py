"""Candidate phrase formation, featurization and gold labeling.

Candidates are contiguous runs of filter-passing words. In ``subngrams``
mode every contiguous subsequence of a run (up to max_phrase_len words)
is a candidate; in ``maximal`` mode only whole runs are kept (runs longer
than max_phrase_len cannot satisfy the length invariant and are skipped).
A phrase's feature vector is the unweighted coordinate-wise mean of its
word vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .embedding import EmbeddingMatrix, vector
from .errors import VocabularyError
from .text import Token, stem_phrase

CANDIDATE_MODES = ("subngrams", "maximal")


@dataclass
class CandidatePhrase:
    words: tuple[str, ...]
    stemmed_form: str
    first_position: int
    occurrences: int
    feature: Optional[np.ndarray] = None
    label: Optional[bool] = None
    score: Optional[float] = None


def _runs(tokens: Sequence[Token], mask: Sequence[bool]):
    run: list[Token] = []
    for token, keep in zip(tokens, mask):
        if keep:
            run.append(token)
        elif run:
            yield run
            run = []
    if run:
        yield run


def extract_candidates(
    tokens: Sequence[Token],
    mask: Sequence[bool],
    max_phrase_len: int = 4,
    mode: str = "subngrams",
) -> list[CandidatePhrase]:
    """Enumerate candidates, deduplicated by stemmed form.

    Duplicate occurrences keep the earliest first_position and sum
    occurrence counts. Output is ordered by (first_position, stemmed form).
    """
    if max_phrase_len < 1:
        raise ValueError("max_phrase_len must be positive")
    if mode not in CANDIDATE_MODES:
        raise ValueError(f"unknown candidate mode {mode!r}")
    if len(mask) != len(tokens):
        raise ValueError("mask length does not match token sequence")

    by_stem: dict[str, CandidatePhrase] = {}

    def add(run_tokens: Sequence[Token]):
        words = tuple(t.normalized for t in run_tokens)
        stemmed = " ".join(t.stem for t in run_tokens)
        position = run_tokens[0].position
        existing = by_stem.get(stemmed)
        if existing is None:
            by_stem[stemmed] = CandidatePhrase(
                words=words,
                stemmed_form=stemmed,
                first_position=position,
                occurrences=1,
            )
        else:
            existing.occurrences += 1
            if position < existing.first_position:
                existing.first_position = position
                existing.words = words

    for run in _runs(tokens, mask):
        if mode == "maximal":
            if len(run) <= max_phrase_len:
                add(run)
            continue
        for length in range(1, min(len(run), max_phrase_len) + 1):
            for start in range(len(run) - length + 1):
                add(run[start : start + length])

    return sorted(
        by_stem.values(), key=lambda c: (c.first_position, c.stemmed_form)
    )


def phrase_vector(emb: EmbeddingMatrix, phrase: CandidatePhrase) -> np.ndarray:
    """Coordinate-wise mean of the phrase's word vectors."""
    vectors = []
    for word in phrase.words:
        if word not in emb.index:
            raise VocabularyError(
                f"phrase word {word!r} missing from embedding vocabulary"
            )
        vectors.append(vector(emb, word))
    return np.mean(vectors, axis=0)


def attach_features(
    cands: Sequence[CandidatePhrase], emb: EmbeddingMatrix
) -> list[CandidatePhrase]:
    for c in cands:
        c.feature = phrase_vector(emb, c)
    return list(cands)


def label_candidates(
    cands: Sequence[CandidatePhrase], gold: Iterable[str]
) -> list[CandidatePhrase]:
    """label = True iff the stemmed form matches a stemmed gold keyphrase."""
    gold_stems = {stem_phrase(g) for g in gold}
    if not gold_stems:
        raise ValueError("gold keyphrase set is empty")
    for c in cands:
        c.label = c.stemmed_form in gold_stems
    return list(cands)
