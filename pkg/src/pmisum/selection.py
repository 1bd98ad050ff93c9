"""Sentence selectors: greedy extraction, exact brute force, lead-k
and TextRank.

The greedy selector and the brute-force solver operate on any score
provider exposing ``n``, ``rel(s)`` and ``red(i, j)``; only the scorer
differs between the PMI and tf-idf arms, never the selection logic.
Ties are always broken toward the lowest document index, so identical
inputs yield identical results regardless of evaluation order.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Protocol, Sequence

import numpy as np

from .core import Document, Hyperparams, SelectionResult
from .tfidf import build_tfidf, cosine

__all__ = [
    "ScoreProvider",
    "objective_value",
    "extract_sentences",
    "brute_force_select",
    "lead_k",
    "textrank_select",
    "pagerank",
    "BRUTE_FORCE_GUARD",
]

BRUTE_FORCE_GUARD = 10**6


class ScoreProvider(Protocol):
    """Pairwise relevance/redundancy scorer over one document.

    ``red`` must be symmetric and is only defined for i != j; both
    functions must be total and deterministic over 0..n-1.
    """

    n: int

    def rel(self, s: int) -> float: ...

    def red(self, i: int, j: int) -> float: ...


def objective_value(scores: ScoreProvider, selected: Sequence[int], hp: Hyperparams) -> float:
    """Recompute lambda1 * Rel(S) + lambda2 * Red(S) from scratch."""
    rel = 0.0
    for s in selected:
        rel += scores.rel(s)
    red = 0.0
    for i, j in combinations(sorted(selected), 2):
        red += scores.red(i, j)
    return hp.lambda1 * rel + hp.lambda2 * red


def extract_sentences(scores: ScoreProvider, hp: Hyperparams) -> SelectionResult:
    """Greedy sequential extraction.

    Repeats min(k, n) times: for every unselected sentence s compute
    the objective change of adding it,

        delta(s) = lambda1 * rel(s) + lambda2 * sum_{s' selected} red(s', s),

    and add the argmax (ties toward the lowest index). The reported
    objective is recomputed from scratch on the final set and matches
    the sum of the recorded deltas to within rounding.
    """
    if scores.n < 1:
        raise ValueError("provider has no sentences")
    if hp.k < 1:
        raise ValueError(f"k must be >= 1, got {hp.k}")

    selected: list[int] = []
    deltas: list[float] = []
    remaining = list(range(scores.n))
    for _ in range(min(hp.k, scores.n)):
        best_idx = -1
        best_delta = -math.inf
        for s in remaining:
            delta = hp.lambda1 * scores.rel(s)
            if selected:
                red_sum = 0.0
                for prev in selected:
                    red_sum += scores.red(prev, s)
                delta += hp.lambda2 * red_sum
            if delta > best_delta:
                best_idx = s
                best_delta = delta
        selected.append(best_idx)
        remaining.remove(best_idx)
        deltas.append(best_delta)

    return SelectionResult(
        selected=tuple(selected),
        deltas=tuple(deltas),
        objective=objective_value(scores, selected, hp),
    )


def brute_force_select(scores: ScoreProvider, hp: Hyperparams) -> SelectionResult:
    """Exact maximizer by enumeration of all size-min(k, n) subsets.

    Intended as a test oracle for the greedy selector; refuses when
    C(n, k) exceeds BRUTE_FORCE_GUARD. Ties go to the lexicographically
    smallest index set, which enumeration order provides for free.
    """
    if scores.n < 1:
        raise ValueError("provider has no sentences")
    size = min(hp.k, scores.n)
    count = math.comb(scores.n, size)
    if count > BRUTE_FORCE_GUARD:
        raise ValueError(
            f"C({scores.n}, {size}) = {count} exceeds the brute-force "
            f"guard of {BRUTE_FORCE_GUARD}"
        )
    best_set: tuple[int, ...] | None = None
    best_value = -math.inf
    for subset in combinations(range(scores.n), size):
        value = objective_value(scores, subset, hp)
        if value > best_value:
            best_set = subset
            best_value = value
    assert best_set is not None
    return SelectionResult(selected=best_set, deltas=(), objective=best_value)


def lead_k(doc: Document, k: int) -> SelectionResult:
    """First min(k, n) sentences; no scorer involved, so deltas are
    empty and the objective is zero."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return SelectionResult(
        selected=tuple(range(min(k, doc.n))), deltas=(), objective=0.0
    )


def pagerank(
    weights: np.ndarray,
    *,
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iter: int = 100,
) -> np.ndarray:
    """Power iteration over a non-negative weight matrix.

    Rows are normalized to transition probabilities; an all-zero row
    contributes uniform mass, so the stationary vector always sums
    to 1. Iteration stops when the L1 change falls below ``tol`` or
    after ``max_iter`` rounds.
    """
    weights = np.asarray(weights, dtype=np.float64)
    n = weights.shape[0]
    if weights.shape != (n, n):
        raise ValueError(f"weight matrix must be square, got {weights.shape}")
    if n == 1:
        return np.ones(1)
    row_sums = weights.sum(axis=1, keepdims=True)
    transitions = np.where(row_sums > 0, weights / np.where(row_sums > 0, row_sums, 1.0), 1.0 / n)
    rank = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        updated = (1.0 - damping) / n + damping * (transitions.T @ rank)
        if np.abs(updated - rank).sum() < tol:
            return updated
        rank = updated
    return rank


def textrank_select(
    doc: Document,
    k: int,
    *,
    num_keywords: int | None = None,
    damping: float = 0.85,
    tol: float = 1e-6,
    max_iter: int = 100,
) -> SelectionResult:
    """Graph-based baseline: rank sentences by PageRank over the
    complete graph weighted with tf-idf cosine similarity, then take
    the top min(k, n) (ties toward the lower index)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    model = build_tfidf(doc, num_keywords=num_keywords)
    n = doc.n
    weights = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            weights[i, j] = weights[j, i] = cosine(model, i, j)
    ranks = pagerank(weights, damping=damping, tol=tol, max_iter=max_iter)
    order = sorted(range(n), key=lambda i: (-ranks[i], i))
    return SelectionResult(
        selected=tuple(order[: min(k, n)]), deltas=(), objective=0.0
    )
