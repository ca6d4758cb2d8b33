"""Document ingestion: tokenization, POS tagging, stemming, corpus loading.

The tagger is a bundled lexicon lookup with suffix-rule fallback; it exists
so the pipeline has no external NLP dependencies. Pre-tagged input
(``<id>.tagged``, lines of ``surface_TAG`` tokens) bypasses it entirely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import porter
from .errors import CorpusError

# Closed tag set used throughout the package.
TAGS = frozenset(
    {"NOUN", "ADJ", "VERB", "ADV", "DET", "PREP", "CONJ", "PRON", "NUM", "OTHER"}
)

DEFAULT_POS_ALLOWED = ("NOUN", "ADJ")

_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")
_TOKEN = re.compile(r"[A-Za-z0-9]+(?:[-'][A-Za-z0-9]+)*")
_NUMERIC = re.compile(r"[0-9]+(?:[.,][0-9]+)*")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    stem: str
    pos: Optional[str]
    position: int
    sentence: int


@dataclass(frozen=True)
class Document:
    id: str
    tokens: tuple[Token, ...]
    gold: Optional[tuple[str, ...]]
    text: str


@dataclass(frozen=True)
class PosFilter:
    allowed: frozenset[str]

    def __post_init__(self):
        if not self.allowed:
            raise ValueError("POS filter must allow at least one tag")
        unknown = self.allowed - TAGS
        if unknown:
            raise ValueError(f"unknown POS tags: {sorted(unknown)}")


def _data_text(name: str) -> str:
    return resources.files("keywalk.data").joinpath(name).read_text("utf-8")


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The bundled English stopword list."""
    return frozenset(
        line.strip() for line in _data_text("stopwords.txt").splitlines() if line.strip()
    )


@lru_cache(maxsize=1)
def _lexicon() -> dict[str, str]:
    table = {}
    for line in _data_text("lexicon.txt").splitlines():
        if not line.strip():
            continue
        word, tag = line.split("\t")
        table[word] = tag
    return table


def stem(word: str) -> str:
    """Porter stem of a lowercased word."""
    return porter.stem(word)


def tokenize(text: str) -> tuple[Token, ...]:
    """Split raw text into position-annotated tokens (POS left unset).

    Punctuation-only runs are dropped; intra-word hyphens and apostrophes
    are kept. Sentences are split on ``.!?`` followed by whitespace and an
    uppercase letter.
    """
    tokens = []
    position = 0
    for sent_idx, sentence in enumerate(_SENTENCE_SPLIT.split(text)):
        for match in _TOKEN.finditer(sentence):
            surface = match.group(0)
            normalized = surface.lower()
            tokens.append(
                Token(
                    surface=surface,
                    normalized=normalized,
                    stem=porter.stem(normalized),
                    pos=None,
                    position=position,
                    sentence=sent_idx,
                )
            )
            position += 1
    return tuple(tokens)


_SUFFIX_RULES = (
    ("ly", "ADV"),
    ("ing", "VERB"),
    ("ed", "VERB"),
    ("ous", "ADJ"),
    ("ful", "ADJ"),
    ("ive", "ADJ"),
    ("able", "ADJ"),
    ("ible", "ADJ"),
    ("less", "ADJ"),
    ("ish", "ADJ"),
)


def _tag_word(normalized: str) -> str:
    lex = _lexicon()
    if normalized in lex:
        return lex[normalized]
    if _NUMERIC.fullmatch(normalized):
        return "NUM"
    for suffix, tag in _SUFFIX_RULES:
        if normalized.endswith(suffix) and len(normalized) > len(suffix) + 2:
            return tag
    return "NOUN"


def pos_tag(tokens: Sequence[Token]) -> tuple[Token, ...]:
    """Assign one tag per token; unknown words default to NOUN."""
    return tuple(replace(t, pos=_tag_word(t.normalized)) for t in tokens)


def candidate_word_mask(
    tokens: Sequence[Token],
    pos_filter: PosFilter,
    stopword_set: Optional[Iterable[str]] = None,
) -> list[bool]:
    """True where a token's tag is allowed and the word is not a stopword.

    Pass an empty set as ``stopword_set`` to disable stopword removal.
    """
    stops = stopwords() if stopword_set is None else frozenset(stopword_set)
    return [
        t.pos in pos_filter.allowed and t.normalized not in stops for t in tokens
    ]


def _parse_tagged(text: str) -> tuple[Token, ...]:
    tokens = []
    position = 0
    for sent_idx, line in enumerate(text.splitlines()):
        for item in line.split():
            surface, sep, tag = item.rpartition("_")
            if not sep or tag not in TAGS:
                raise CorpusError(f"bad surface_TAG item {item!r}")
            normalized = surface.lower()
            tokens.append(
                Token(
                    surface=surface,
                    normalized=normalized,
                    stem=porter.stem(normalized),
                    pos=tag,
                    position=position,
                    sentence=sent_idx,
                )
            )
            position += 1
    return tuple(tokens)


def stem_phrase(phrase: str) -> str:
    """Lowercased, whitespace-normalized, per-word-stemmed form of a phrase."""
    words = _TOKEN.findall(phrase.lower())
    return " ".join(porter.stem(w) for w in words)


def _read_gold(path: Path) -> tuple[str, ...]:
    try:
        lines = path.read_text("utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read key file {path}: {exc}") from exc
    phrases = [line.strip() for line in lines if line.strip()]
    if not phrases:
        raise CorpusError(f"empty key file {path}")
    seen: set[str] = set()
    unique = []
    for p in phrases:
        s = stem_phrase(p)
        if s not in seen:
            seen.add(s)
            unique.append(p)
    return tuple(unique)


def load_document(path: Path, doc_id: Optional[str] = None) -> Document:
    """Load a single ``.txt`` or ``.tagged`` file (no gold keys)."""
    path = Path(path)
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    if path.suffix == ".tagged":
        tokens = _parse_tagged(text)
    else:
        tokens = pos_tag(tokenize(text))
    return Document(id=doc_id or path.stem, tokens=tokens, gold=None, text=text)


def load_corpus(directory: Path) -> list[Document]:
    """Load every document of a corpus directory, ordered by id.

    Layout: ``<id>.txt`` (raw text) or ``<id>.tagged`` (pre-tagged,
    preferred when both exist), plus optional ``<id>.key`` with one gold
    keyphrase per line.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"not a corpus directory: {directory}")
    txt = {p.stem: p for p in directory.glob("*.txt")}
    tagged = {p.stem: p for p in directory.glob("*.tagged")}
    keys = {p.stem: p for p in directory.glob("*.key")}
    for doc_id, path in sorted(keys.items()):
        if doc_id not in txt and doc_id not in tagged:
            raise CorpusError(f"orphan key file {path} (no matching .txt/.tagged)")
    documents = []
    for doc_id in sorted(txt.keys() | tagged.keys()):
        source = tagged.get(doc_id, txt.get(doc_id))
        doc = load_document(source, doc_id)
        if doc_id in keys:
            doc = replace(doc, gold=_read_gold(keys[doc_id]))
        documents.append(doc)
    return documents
