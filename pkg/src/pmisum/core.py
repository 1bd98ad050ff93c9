"""Domain types and pointwise-mutual-information scoring.

A document is an ordered list of sentences. A language model (or any
other estimator) supplies a log-probability table holding, for every
sentence, its unconditional log-probability and, for every ordered
sentence pair, the log-probability of the second sentence given the
first as prefix. From that table this module derives:

  relevance of a sentence s:   sum over document sentences d of
                               pmi(s; d) = log p(d | s) - log p(d)
  redundancy of a pair (i, j): pmi conditioned on the earlier document
                               position, log p(s_j | s_i) - log p(s_j)
                               for i < j, symmetric otherwise
  combined objective:          lambda1 * Rel(S) + lambda2 * Red(S)

All values are natural-log based. Everything here is immutable after
construction and all operations are pure, so tables and providers can
be shared freely across threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "Sentence",
    "Document",
    "LogProbTable",
    "Hyperparams",
    "SelectionResult",
    "pmi_rel",
    "pmi_red",
    "relevance_of",
    "redundancy_of_set",
    "objective",
    "PmiScoreProvider",
]


@dataclass(frozen=True)
class Sentence:
    """One sentence of a document: its 0-based position and its text."""

    index: int
    text: str

    def __post_init__(self) -> None:
        stripped = self.text.strip()
        if not stripped:
            raise ValueError(f"sentence {self.index} is empty after trimming")
        object.__setattr__(self, "text", stripped)
        if self.index < 0:
            raise ValueError(f"sentence index must be >= 0, got {self.index}")


@dataclass(frozen=True)
class Document:
    """An ordered, non-empty list of sentences under one id."""

    id: str
    sentences: tuple[Sentence, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if not self.sentences:
            raise ValueError(f"document {self.id!r} has no sentences")
        for pos, sent in enumerate(self.sentences):
            if sent.index != pos:
                raise ValueError(
                    f"document {self.id!r}: sentence at position {pos} "
                    f"carries index {sent.index}"
                )

    @classmethod
    def from_texts(cls, doc_id: str, texts: Iterable[str]) -> "Document":
        return cls(doc_id, tuple(Sentence(i, t) for i, t in enumerate(texts)))

    @property
    def n(self) -> int:
        return len(self.sentences)

    def text_of(self, indices: Iterable[int] | None = None) -> str:
        """Render the given sentence indices (or all) in document order."""
        if indices is None:
            chosen = self.sentences
        else:
            chosen = tuple(self.sentences[i] for i in sorted(set(indices)))
        return " ".join(s.text for s in chosen)


@dataclass(frozen=True, eq=False)
class LogProbTable:
    """Per-sentence log-probabilities and pairwise conditionals.

    ``log_p[j]`` estimates log p(s_j); ``log_p_cond[i, j]`` estimates
    log p(s_j | s_i) with sentence i as prefix. Entries are estimates,
    so positive values are tolerated, but every entry must be finite.
    The diagonal of ``log_p_cond`` is stored (writers fill it with
    ``log_p``) and never read by any operation below.

    Equality compares the two arrays bit for bit; metadata is
    descriptive and excluded.
    """

    log_p: np.ndarray
    log_p_cond: np.ndarray
    metadata: Mapping[str, object] | None = field(default=None, compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogProbTable):
            return NotImplemented
        return np.array_equal(self.log_p, other.log_p) and np.array_equal(
            self.log_p_cond, other.log_p_cond
        )

    __hash__ = None

    def __post_init__(self) -> None:
        p = np.asarray(self.log_p, dtype=np.float64)
        cond = np.asarray(self.log_p_cond, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("log_p must be a non-empty 1-d vector")
        n = p.shape[0]
        if cond.shape != (n, n):
            raise ValueError(
                f"log_p_cond must be {n}x{n} to match log_p, got {cond.shape}"
            )
        if not np.isfinite(p).all() or not np.isfinite(cond).all():
            raise ValueError("log-probability entries must be finite")
        p.flags.writeable = False
        cond.flags.writeable = False
        object.__setattr__(self, "log_p", p)
        object.__setattr__(self, "log_p_cond", cond)

    @property
    def n(self) -> int:
        return self.log_p.shape[0]

    def _check_index(self, name: str, value: int) -> None:
        if not 0 <= value < self.n:
            raise IndexError(f"{name}={value} out of range for n={self.n}")


@dataclass(frozen=True)
class Hyperparams:
    """Objective weights and summary length: lambda1 on relevance,
    lambda2 on redundancy, k sentences to select."""

    lambda1: float
    lambda2: float
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of a selector: indices in selection order, the per-step
    objective increments (empty for selectors without greedy steps),
    and the final objective value."""

    selected: tuple[int, ...]
    deltas: tuple[float, ...]
    objective: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "selected", tuple(self.selected))
        object.__setattr__(self, "deltas", tuple(self.deltas))
        if len(set(self.selected)) != len(self.selected):
            raise ValueError(f"duplicate indices in selection {self.selected}")


def pmi_rel(table: LogProbTable, s: int, d: int) -> float:
    """PMI of document sentence d with summary sentence s as condition:
    log p(d | s) - log p(d)."""
    table._check_index("s", s)
    table._check_index("d", d)
    return float(table.log_p_cond[s, d] - table.log_p[d])


def pmi_red(table: LogProbTable, i: int, j: int) -> float:
    """Redundancy PMI of sentences at document positions i and j,
    conditioning on the earlier position. Symmetric; i == j is
    rejected (self-redundancy is undefined)."""
    table._check_index("i", i)
    table._check_index("j", j)
    if i == j:
        raise ValueError(f"self-redundancy pmi_red({i}, {i}) is undefined")
    if i > j:
        i, j = j, i
    return float(table.log_p_cond[i, j] - table.log_p[j])


def relevance_of(table: LogProbTable, s: int, *, include_self_pair: bool = False) -> float:
    """Total relevance of sentence s: sum of pmi_rel(s, d) over the
    document. The self pair d == s is excluded unless
    ``include_self_pair`` is set (the prefix-conditioned estimate of a
    sentence given itself is an artifact, not content)."""
    table._check_index("s", s)
    total = 0.0
    for d in range(table.n):
        if d == s and not include_self_pair:
            continue
        total += float(table.log_p_cond[s, d] - table.log_p[d])
    return total


def redundancy_of_set(table: LogProbTable, selected: Iterable[int]) -> float:
    """Total redundancy of a sentence set: sum of pmi_red over all
    unordered pairs. Empty and singleton sets score 0."""
    indices = list(selected)
    if len(set(indices)) != len(indices):
        raise ValueError(f"duplicate indices in {indices}")
    total = 0.0
    for i, j in combinations(sorted(indices), 2):
        total += pmi_red(table, i, j)
    return total


def objective(
    table: LogProbTable,
    selected: Iterable[int],
    hp: Hyperparams,
    *,
    include_self_pair: bool = False,
) -> float:
    """Weighted objective lambda1 * Rel(S) + lambda2 * Red(S)."""
    indices = list(selected)
    rel = 0.0
    for s in indices:
        rel += relevance_of(table, s, include_self_pair=include_self_pair)
    return hp.lambda1 * rel + hp.lambda2 * redundancy_of_set(table, indices)


class PmiScoreProvider:
    """Pairwise scorer backed by a log-probability table.

    Satisfies the provider contract used by the selectors: ``n``,
    ``rel(s)`` (precomputed at construction) and ``red(i, j)``.
    """

    def __init__(self, table: LogProbTable, *, include_self_pair: bool = False):
        self.table = table
        self.n = table.n
        self._rel = tuple(
            relevance_of(table, s, include_self_pair=include_self_pair)
            for s in range(table.n)
        )

    def rel(self, s: int) -> float:
        return self._rel[s]

    def red(self, i: int, j: int) -> float:
        return pmi_red(self.table, i, j)
