"""End-to-end corpus runs: load documents, acquire score tables,
select sentences, score against references and write a JSONL report.

Reports are deterministic byte for byte for a fixed corpus and table
set: rows carry no timestamps or host details, floats are serialized
via repr, and rows appear in corpus order followed by one summary row.

When a score table is missing on disk the runner can fetch one from a
remote scoring service; set the PMISUM_SCORER_URL environment variable
(or the scorer_url config key) to the service base URL. The service
contract is POST {base}/score with body {"sentences": [...]} returning
a table payload, and GET {base}/health for liveness.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from typing import Sequence

import requests

from .core import Document, Hyperparams, LogProbTable, PmiScoreProvider, SelectionResult
from .dataio import (
    CorpusRecord,
    TableFormatError,
    load_corpus,
    load_table,
    table_from_dict,
    table_path_for,
)
from .evaluation import (
    AblationRow,
    GridSearchResult,
    grid_search_lambdas,
    oracle_extract,
    position_histogram,
    rouge_report,
    run_ablation,
)
from .selection import brute_force_select, extract_sentences, lead_k, textrank_select
from .tfidf import TfidfScoreProvider

__all__ = [
    "K_PRESETS",
    "SCORERS",
    "SELECTORS",
    "ENV_SCORER_URL",
    "PipelineError",
    "RunConfig",
    "DocumentReport",
    "PipelineResult",
    "run_pipeline",
    "run_grid_search",
    "run_ablation_study",
    "write_report",
]

# Sentence budgets per dataset, applied only when the config names the
# dataset explicitly.
K_PRESETS = {
    "cnn_dm": 3,
    "xsum": 3,
    "reddit_tifu": 3,
    "reddit": 4,
    "pubmed": 9,
}

# Pairwise scorers feeding the greedy/brute selectors; lead, textrank
# and oracle ignore the scorer.
SCORERS = ("pmi", "tfidf")

SELECTORS = ("greedy", "brute", "lead", "textrank", "oracle")

ENV_SCORER_URL = "PMISUM_SCORER_URL"

REMOTE_TIMEOUT_SECONDS = 30.0


class PipelineError(RuntimeError):
    """Unrecoverable run failure (bad config, unobtainable tables)."""


@dataclass(frozen=True)
class RunConfig:
    corpus_path: str
    output_path: str | None = None
    tables_dir: str | None = None
    scorer: str = "pmi"
    selector: str = "greedy"
    lambda1: float = 2.0
    lambda2: float = -2.0
    k: int | None = None
    dataset: str | None = None
    num_keywords: int | None = None
    include_self_pair: bool = False
    rouge_beta: float = 1.0
    textrank_damping: float = 0.85
    textrank_tol: float = 1e-6
    textrank_max_iter: int = 100
    scorer_url: str | None = None

    @classmethod
    def from_file(cls, path: str | os.PathLike, **overrides) -> "RunConfig":
        """Load a JSON config; keyword overrides (CLI flags) win over
        file values when not None."""
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
        if not isinstance(payload, dict):
            raise PipelineError("config file must hold a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise PipelineError(f"unknown config keys: {', '.join(unknown)}")
        for key, value in overrides.items():
            if value is not None:
                payload[key] = value
        return cls(**payload)

    def resolved_k(self) -> int:
        """The sentence budget: explicit k wins, else the dataset
        preset; having neither is a config error."""
        if self.k is not None:
            if self.k < 1:
                raise PipelineError(f"k must be >= 1, got {self.k}")
            return self.k
        if self.dataset is not None:
            preset = K_PRESETS.get(self.dataset)
            if preset is None:
                raise PipelineError(
                    f"unknown dataset {self.dataset!r}; known: {', '.join(sorted(K_PRESETS))}"
                )
            return preset
        raise PipelineError("either k or dataset must be set")

    def resolved_scorer_url(self) -> str | None:
        return self.scorer_url or os.environ.get(ENV_SCORER_URL) or None

    def needs_tables(self) -> bool:
        return self.selector in ("greedy", "brute") and self.scorer == "pmi"

    def validate(self) -> None:
        if self.scorer not in SCORERS:
            raise PipelineError(
                f"unknown scorer {self.scorer!r}; known: {', '.join(SCORERS)}"
            )
        if self.selector not in SELECTORS:
            raise PipelineError(
                f"unknown selector {self.selector!r}; known: {', '.join(SELECTORS)}"
            )
        self.resolved_k()
        if self.needs_tables() and self.tables_dir is None and self.resolved_scorer_url() is None:
            raise PipelineError(
                "the pmi scorer needs tables_dir or a scorer endpoint "
                f"(scorer_url or ${ENV_SCORER_URL})"
            )


@dataclass(frozen=True)
class DocumentReport:
    doc_id: str
    selector: str
    n_sentences: int
    result: SelectionResult
    rouge: dict | None

    def to_row(self) -> dict:
        row = {
            "type": "document",
            "doc_id": self.doc_id,
            "selector": self.selector,
            "n_sentences": self.n_sentences,
            "selected_indices": list(self.result.selected),
            "deltas": list(self.result.deltas),
            "objective": self.result.objective,
        }
        if self.rouge is None:
            row["rouge"] = None
        else:
            row["rouge"] = {
                name: {
                    "precision": score.precision,
                    "recall": score.recall,
                    "f1": score.f1,
                }
                for name, score in self.rouge.items()
            }
        return row


@dataclass(frozen=True)
class PipelineResult:
    reports: tuple[DocumentReport, ...]
    failures: tuple[dict, ...]
    summary: dict = field(compare=False)

    @property
    def ok(self) -> bool:
        return not self.failures


def _fetch_remote_table(url: str, doc: Document) -> LogProbTable:
    response = requests.post(
        url.rstrip("/") + "/score",
        json={"sentences": [s.text for s in doc.sentences]},
        timeout=REMOTE_TIMEOUT_SECONDS,
    )
    response.raise_for_status()
    return table_from_dict(response.json())


def _acquire_table(config: RunConfig, record: CorpusRecord, doc: Document) -> LogProbTable:
    if config.tables_dir is not None:
        path = table_path_for(config.tables_dir, record.doc_id)
        if os.path.exists(path):
            return load_table(path)
    url = config.resolved_scorer_url()
    if url is None:
        raise PipelineError(
            f"no score table for document {record.doc_id!r} and no scorer "
            f"endpoint configured (set ${ENV_SCORER_URL} or scorer_url)"
        )
    return _fetch_remote_table(url, doc)


def _provider(config: RunConfig, record: CorpusRecord, doc: Document):
    if config.scorer == "tfidf":
        return TfidfScoreProvider.from_document(
            doc,
            num_keywords=config.num_keywords,
            include_self_pair=config.include_self_pair,
        )
    table = _acquire_table(config, record, doc)
    if table.n != doc.n:
        raise ValueError(f"table has {table.n} sentences but document has {doc.n}")
    return PmiScoreProvider(table, include_self_pair=config.include_self_pair)


def _select(config: RunConfig, record: CorpusRecord, doc: Document, k: int) -> SelectionResult:
    if config.selector == "lead":
        return lead_k(doc, k)
    if config.selector == "textrank":
        return textrank_select(
            doc,
            k,
            num_keywords=config.num_keywords,
            damping=config.textrank_damping,
            tol=config.textrank_tol,
            max_iter=config.textrank_max_iter,
        )
    if config.selector == "oracle":
        if record.reference is None:
            raise ValueError("oracle selection requires a reference")
        return oracle_extract(doc, record.reference, k)
    provider = _provider(config, record, doc)
    hp = Hyperparams(config.lambda1, config.lambda2, k)
    if config.selector == "brute":
        return brute_force_select(provider, hp)
    return extract_sentences(provider, hp)


def _mean(values: Sequence[float]) -> float | None:
    return sum(values) / len(values) if values else None


def run_pipeline(config: RunConfig) -> PipelineResult:
    """Process every corpus record, skipping (and reporting) records
    that fail individually; a missing table with no fallback endpoint
    aborts the whole run."""
    config.validate()
    k = config.resolved_k()
    records = load_corpus(config.corpus_path)
    if not records:
        raise PipelineError(f"corpus {config.corpus_path!r} is empty")

    reports: list[DocumentReport] = []
    failures: list[dict] = []
    for record in records:
        try:
            doc = record.to_document()
            result = _select(config, record, doc, k)
            rouge = (
                rouge_report(
                    doc.text_of(result.selected),
                    record.reference,
                    beta=config.rouge_beta,
                )
                if record.reference is not None
                else None
            )
        except PipelineError:
            raise
        except (ValueError, TableFormatError, OSError, requests.RequestException) as exc:
            failures.append({"doc_id": record.doc_id, "reason": str(exc)})
            continue
        reports.append(
            DocumentReport(
                doc_id=record.doc_id,
                selector=config.selector,
                n_sentences=doc.n,
                result=result,
                rouge=rouge,
            )
        )

    histogram = position_histogram(
        [r.result for r in reports], [r.n_sentences for r in reports]
    )
    scored = [r.rouge for r in reports if r.rouge is not None]
    summary = {
        "type": "summary",
        "scorer": config.scorer,
        "selector": config.selector,
        "k": k,
        "documents": len(records),
        "processed": len(reports),
        "failed": len(failures),
        "failures": failures,
        "mean_rouge1_f1": _mean([r["rouge1"].f1 for r in scored]),
        "mean_rouge2_f1": _mean([r["rouge2"].f1 for r in scored]),
        "mean_rougeL_f1": _mean([r["rougeL"].f1 for r in scored]),
        "position_counts": list(histogram.counts),
        "fraction_first_3": histogram.fraction_first_3,
    }
    result = PipelineResult(
        reports=tuple(reports), failures=tuple(failures), summary=summary
    )
    if config.output_path is not None:
        write_report(result, config.output_path)
    return result


def write_report(result: PipelineResult, path: str | os.PathLike) -> None:
    """One JSON line per processed document, then the summary line."""
    with open(path, "w", encoding="utf-8") as handle:
        for report in result.reports:
            handle.write(json.dumps(report.to_row(), ensure_ascii=False) + "\n")
        handle.write(json.dumps(result.summary, ensure_ascii=False) + "\n")


def _load_eval_set(
    config: RunConfig,
) -> tuple[list[tuple[Document, LogProbTable, str]], list[dict]]:
    """Evaluation triples for tuning and ablation; records without a
    reference or with a broken table are skipped and reported."""
    records = load_corpus(config.corpus_path)
    triples: list[tuple[Document, LogProbTable, str]] = []
    failures: list[dict] = []
    for record in records:
        try:
            if record.reference is None:
                raise ValueError("record has no reference summary")
            doc = record.to_document()
            table = _acquire_table(config, record, doc)
            if table.n != doc.n:
                raise ValueError(
                    f"table has {table.n} sentences but document has {doc.n}"
                )
        except PipelineError:
            raise
        except (ValueError, TableFormatError, OSError, requests.RequestException) as exc:
            failures.append({"doc_id": record.doc_id, "reason": str(exc)})
            continue
        triples.append((doc, table, record.reference))
    if not triples:
        raise PipelineError("no usable (document, table, reference) triples")
    return triples, failures


def run_grid_search(config: RunConfig) -> tuple[GridSearchResult, list[dict]]:
    """Tune the two weights on the configured corpus (pmi scorer)."""
    k = config.resolved_k()
    triples, failures = _load_eval_set(config)
    result = grid_search_lambdas(
        triples, k, include_self_pair=config.include_self_pair
    )
    return result, failures


def run_ablation_study(config: RunConfig) -> tuple[list[AblationRow], list[dict]]:
    """Relevance-only / redundancy-only / combined comparison on the
    configured corpus at the configured weights (pmi scorer)."""
    k = config.resolved_k()
    triples, failures = _load_eval_set(config)
    hp = Hyperparams(config.lambda1, config.lambda2, k)
    rows = run_ablation(triples, hp, include_self_pair=config.include_self_pair)
    return rows, failures
