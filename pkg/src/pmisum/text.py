"""Tokenization and rule-based sentence splitting.

The single tokenizer defined here is shared by the tf-idf scorer and
the ROUGE metrics so the two can never disagree: lowercase, then take
maximal runs of alphanumeric characters (underscore excluded). No
stemming, no stopword removal.
"""

from __future__ import annotations

import re

__all__ = ["tokenize", "split_sentences", "DEFAULT_ABBREVIATIONS"]

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Sentence-final punctuation followed by whitespace and an upper-case
# letter, a digit, or an opening quote marks a boundary candidate.
_BOUNDARY_RE = re.compile(r"[.!?][\"'”’)\]]*\s+(?=[A-Z0-9\"'“‘])")

# A trailing word, possibly with internal periods ("e.g"), right before
# a candidate period; used for abbreviation suppression.
_TRAILING_WORD_RE = re.compile(r"([\w]+(?:\.[\w]+)*)$", re.UNICODE)

DEFAULT_ABBREVIATIONS = frozenset(
    {"mr", "mrs", "dr", "st", "vs", "etc", "e.g", "i.e"}
)


def tokenize(text: str) -> list[str]:
    """Lowercased alphanumeric tokens of ``text``, in order."""
    return _TOKEN_RE.findall(text.lower())


def split_sentences(
    text: str,
    abbreviations: frozenset[str] | set[str] = DEFAULT_ABBREVIATIONS,
) -> list[str]:
    """Split raw text into sentences with a deterministic rule.

    A boundary is a '.', '!' or '?' (optionally followed by closing
    quotes or brackets) followed by whitespace and then an upper-case
    letter, digit or quote. A '.' directly after a known abbreviation
    never splits. Whatever trails the last boundary is kept as the
    final sentence; empty pieces are dropped.
    """
    if not text or not text.strip():
        return []
    lowered = {a.lower() for a in abbreviations}
    pieces: list[str] = []
    start = 0
    for match in _BOUNDARY_RE.finditer(text):
        if text[match.start()] == ".":
            word = _TRAILING_WORD_RE.search(text[: match.start()])
            if word and word.group(1).lower() in lowered:
                continue
        pieces.append(text[start : match.end()])
        start = match.end()
    pieces.append(text[start:])
    return [p.strip() for p in pieces if p.strip()]
