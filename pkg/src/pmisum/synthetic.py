"""Synthetic fixtures: hand-designed documents and score tables with
known-by-construction behavior, used by the demo CLI and the test
suite.

Tables here are built by choosing target association values M[s][d]
and marginals, then storing log_p_cond[s][d] = log_p[d] + M[s][d], so
the association scores recovered downstream equal M up to float
rounding (exactly, when the inputs are dyadic rationals).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import Document, LogProbTable

__all__ = [
    "MatrixScoreProvider",
    "make_table_from_matrix",
    "make_independent_table",
    "make_random_table",
    "make_toy_corpus",
    "make_greedy_trap_table",
    "TOY_DOC_ID",
]

TOY_DOC_ID = "toy-0001"


class MatrixScoreProvider:
    """Score provider backed by explicit relevance and redundancy
    arrays; redundancy reads M[min(i,j)][max(i,j)] so call order does
    not matter."""

    def __init__(self, rel: Sequence[float], red: Sequence[Sequence[float]]):
        self._rel = tuple(float(x) for x in rel)
        self._red = np.asarray(red, dtype=np.float64)
        if self._red.shape != (len(self._rel), len(self._rel)):
            raise ValueError(
                f"red must be {len(self._rel)}x{len(self._rel)}, got {self._red.shape}"
            )
        self.n = len(self._rel)

    def rel(self, s: int) -> float:
        return self._rel[s]

    def red(self, i: int, j: int) -> float:
        if i == j:
            raise ValueError(f"self-pair redundancy is undefined, got i == j == {i}")
        lo, hi = (i, j) if i < j else (j, i)
        return float(self._red[lo, hi])


def make_table_from_matrix(
    assoc: Sequence[Sequence[float]],
    log_p: Sequence[float],
    *,
    metadata: dict | None = None,
) -> LogProbTable:
    """Build a table whose pairwise association scores reproduce the
    given matrix: log_p_cond[s][d] = log_p[d] + assoc[s][d] off the
    diagonal, log_p[s] on it (the diagonal is never consumed)."""
    marginals = np.asarray(log_p, dtype=np.float64)
    matrix = np.asarray(assoc, dtype=np.float64)
    n = marginals.shape[0]
    if matrix.shape != (n, n):
        raise ValueError(f"assoc must be {n}x{n}, got {matrix.shape}")
    cond = marginals[np.newaxis, :] + matrix
    np.fill_diagonal(cond, marginals)
    return LogProbTable(
        log_p=marginals.copy(), log_p_cond=cond, metadata=metadata or {}
    )


def make_independent_table(log_p: Sequence[float]) -> LogProbTable:
    """Table for mutually independent sentences: every conditional
    equals the matching marginal bit for bit, so all association
    scores are exactly zero."""
    marginals = np.asarray(log_p, dtype=np.float64)
    cond = np.tile(marginals, (marginals.shape[0], 1))
    return LogProbTable(log_p=marginals.copy(), log_p_cond=cond)


def make_random_table(n: int, rng: np.random.Generator) -> LogProbTable:
    """Random table with realistic magnitudes: marginals in [-12, -2],
    conditionals perturbed around the marginals by [-3, 3]."""
    log_p = rng.uniform(-12.0, -2.0, size=n)
    log_p_cond = log_p[np.newaxis, :] + rng.uniform(-3.0, 3.0, size=(n, n))
    return LogProbTable(log_p=log_p, log_p_cond=log_p_cond)


# Toy document: a lead-off filler sentence, an informative sentence A,
# a verbatim duplicate of A, a second informative sentence B, and two
# trailing fillers. The reference is exactly A followed by B, and the
# fillers share no tokens with it.
_TOY_SENTENCES = (
    "The weather report arrives at noon.",
    "Quantum computers factor large numbers quickly.",
    "Quantum computers factor large numbers quickly.",
    "Shor's algorithm threatens modern encryption.",
    "Lunch was served in the cafeteria.",
    "The parking lot was repaved in June.",
)

_TOY_REFERENCE = (
    "Quantum computers factor large numbers quickly. "
    "Shor's algorithm threatens modern encryption."
)

# Target association matrix for the toy document. Row sums off the
# diagonal are the relevance totals (0.2, 4.4, 4.3, 2.1, 0.25, 0.25);
# the upper triangle carries the pairwise redundancy, with the A/A-dup
# pair at 3.2 and the A/B pair at 0.6.
_TOY_ASSOC = (
    (0.0, 0.1, 0.1, 0.1, -0.2, 0.1),
    (0.2, 0.0, 3.2, 0.6, 0.2, 0.2),
    (0.2, 3.0, 0.0, 0.7, 0.2, 0.2),
    (0.2, 0.8, 0.7, 0.0, 0.2, 0.2),
    (0.05, 0.05, 0.05, 0.05, 0.0, 0.05),
    (0.05, 0.05, 0.05, 0.05, 0.05, 0.0),
)

_TOY_LOG_P = (-14.2, -9.1, -9.1, -11.6, -14.5, -14.7)


def make_toy_corpus() -> tuple[Document, LogProbTable, str]:
    """Six-sentence document with a verbatim duplicate, its score
    table, and an abstractive reference covering the two informative
    sentences."""
    doc = Document.from_texts(TOY_DOC_ID, _TOY_SENTENCES)
    table = make_table_from_matrix(
        _TOY_ASSOC, _TOY_LOG_P, metadata={"source": "synthetic-toy"}
    )
    return doc, table, _TOY_REFERENCE


# Adversarial instance for the greedy selector: sentence 1 has the
# single highest relevance but is heavily redundant with both members
# of the jointly best pair (2, 3). All values are dyadic rationals so
# every downstream comparison is exact.
_TRAP_ASSOC = (
    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    (-190.0, 0.0, 100.0, 100.0, 0.0, 0.0, 0.0),
    (9.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    (8.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
)


def make_greedy_trap_table() -> LogProbTable:
    """Seven-sentence table on which greedy selection with weights
    (2, -2) and k = 2 is strictly worse than the exhaustive optimum."""
    return make_table_from_matrix(_TRAP_ASSOC, (-10.0,) * 7)
