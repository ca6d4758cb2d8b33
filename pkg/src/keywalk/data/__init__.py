"""Bundled data files: stopwords, tagger lexicon, and the mini corpus."""

from pathlib import Path


def mini_corpus_path() -> Path:
    """Directory of the bundled 20-document synthetic gold corpus."""
    return Path(__file__).parent / "mini_corpus"
