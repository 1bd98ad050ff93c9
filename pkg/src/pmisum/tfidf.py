"""Tf-idf sentence vectors and cosine similarity.

The idf corpus is the sentences of the single document being
summarized, which keeps the scorer training-free and per-document:
idf(t) = ln(n / df(t)) + 1 with df counted over sentences, weight =
raw term count * idf. Cosine over these non-negative vectors serves
as both the relevance and the redundancy score in the similarity
variant of the framework, and as the edge weight for TextRank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Document
from .text import tokenize

__all__ = [
    "TfidfModel",
    "build_tfidf",
    "cosine",
    "tfidf_rel",
    "tfidf_red",
    "TfidfScoreProvider",
]


@dataclass(frozen=True)
class TfidfModel:
    """Sparse tf-idf weights per sentence.

    ``vectors[i]`` maps token -> non-negative weight; a sentence with
    no in-vocabulary tokens has an empty mapping (the zero vector).
    """

    vocabulary: dict[str, int]
    idf: dict[str, float]
    vectors: tuple[dict[str, float], ...]

    def __post_init__(self) -> None:
        for vec in self.vectors:
            for token, weight in vec.items():
                if weight < 0:
                    raise ValueError(f"negative weight for token {token!r}")

    @property
    def n(self) -> int:
        return len(self.vectors)


def build_tfidf(doc: Document, *, num_keywords: int | None = None) -> TfidfModel:
    """Build the per-sentence tf-idf model for ``doc``.

    ``num_keywords`` optionally restricts the vocabulary to the N
    tokens with the highest total tf-idf mass across the document
    (ties broken by token string); None keeps every token.
    """
    sent_tokens = [tokenize(s.text) for s in doc.sentences]
    n = doc.n

    df: dict[str, int] = {}
    for tokens in sent_tokens:
        for token in set(tokens):
            df[token] = df.get(token, 0) + 1

    idf = {token: math.log(n / count) + 1.0 for token, count in df.items()}

    vectors = []
    for tokens in sent_tokens:
        counts: dict[str, int] = {}
        for token in tokens:
            counts[token] = counts.get(token, 0) + 1
        vectors.append({token: count * idf[token] for token, count in counts.items()})

    if num_keywords is not None and num_keywords < len(idf):
        mass: dict[str, float] = {}
        for vec in vectors:
            for token, weight in vec.items():
                mass[token] = mass.get(token, 0.0) + weight
        keep = {
            token
            for token, _ in sorted(mass.items(), key=lambda kv: (-kv[1], kv[0]))[
                :num_keywords
            ]
        }
        idf = {t: v for t, v in idf.items() if t in keep}
        vectors = [{t: w for t, w in vec.items() if t in keep} for vec in vectors]

    vocabulary = {token: col for col, token in enumerate(sorted(idf))}
    return TfidfModel(vocabulary, idf, tuple(vectors))


def cosine(model: TfidfModel, i: int, j: int) -> float:
    """Cosine similarity of sentence vectors i and j; 0 if either is zero."""
    a, b = model.vectors[i], model.vectors[j]
    if not a or not b:
        return 0.0
    if i == j or a == b:
        return 1.0
    # Summing shared tokens in sorted order keeps cosine(i, j) and
    # cosine(j, i) bit-identical.
    dot = sum(a[t] * b[t] for t in sorted(set(a) & set(b)))
    if dot == 0.0:
        return 0.0
    norm_a = math.sqrt(sum(w * w for w in a.values()))
    norm_b = math.sqrt(sum(w * w for w in b.values()))
    return min(1.0, dot / (norm_a * norm_b))


def tfidf_rel(model: TfidfModel, s: int, d: int) -> float:
    """Relevance of document sentence d to summary sentence s."""
    return cosine(model, s, d)


def tfidf_red(model: TfidfModel, i: int, j: int) -> float:
    """Redundancy of a sentence pair (symmetric by construction)."""
    return cosine(model, i, j)


class TfidfScoreProvider:
    """Provider facade over a tf-idf model, mirroring PmiScoreProvider
    so the greedy selector sees the two scorers identically."""

    def __init__(self, model: TfidfModel, *, include_self_pair: bool = False):
        self.model = model
        self.n = model.n
        self._rel = tuple(
            sum(
                tfidf_rel(model, s, d)
                for d in range(model.n)
                if d != s or include_self_pair
            )
            for s in range(model.n)
        )

    @classmethod
    def from_document(
        cls,
        doc: Document,
        *,
        num_keywords: int | None = None,
        include_self_pair: bool = False,
    ) -> "TfidfScoreProvider":
        return cls(
            build_tfidf(doc, num_keywords=num_keywords),
            include_self_pair=include_self_pair,
        )

    def rel(self, s: int) -> float:
        return self._rel[s]

    def red(self, i: int, j: int) -> float:
        return tfidf_red(self.model, i, j)
