"""Corpus and log-probability table file formats.

Corpora are JSON Lines: one record per document with a unique "id" and
exactly one of "text" (raw, split downstream) or "sentences" (already
split). An optional "reference" carries the abstractive summary used
for evaluation.

Tables are single JSON documents with keys "version" (currently 1),
"n", "log_p" (length n) and "log_p_cond" (n x n), all finite floats,
plus an optional "metadata" object passed through untouched. Floats
survive a save/load round trip bit for bit because json serializes
them via repr and parses them back with float().
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Document, LogProbTable

__all__ = [
    "CorpusFormatError",
    "TableFormatError",
    "CorpusRecord",
    "load_corpus",
    "save_corpus",
    "table_to_dict",
    "table_from_dict",
    "save_table",
    "load_table",
    "table_path_for",
]

TABLE_VERSION = 1


class CorpusFormatError(ValueError):
    """Malformed corpus file; message names the offending line."""


class TableFormatError(ValueError):
    """Malformed table payload; message names the offending field."""


@dataclass(frozen=True)
class CorpusRecord:
    doc_id: str
    text: str | None = None
    sentences: tuple[str, ...] | None = None
    reference: str | None = None
    extras: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if (self.text is None) == (self.sentences is None):
            raise ValueError("exactly one of text or sentences is required")
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")

    def to_document(self, splitter=None) -> Document:
        """Materialize as a Document, splitting text when needed."""
        if self.sentences is not None:
            return Document.from_texts(self.doc_id, self.sentences)
        if splitter is None:
            from .text import split_sentences

            splitter = split_sentences
        return Document.from_texts(self.doc_id, splitter(self.text))


def _parse_record(payload: dict, line_no: int) -> CorpusRecord:
    if not isinstance(payload, dict):
        raise CorpusFormatError(f"line {line_no}: record must be a JSON object")
    doc_id = payload.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusFormatError(f"line {line_no}: missing or empty 'id'")
    text = payload.get("text")
    sentences = payload.get("sentences")
    if (text is None) == (sentences is None):
        raise CorpusFormatError(
            f"line {line_no}: exactly one of 'text' or 'sentences' is required"
        )
    if text is not None and not isinstance(text, str):
        raise CorpusFormatError(f"line {line_no}: 'text' must be a string")
    if sentences is not None:
        if not isinstance(sentences, list) or not all(
            isinstance(s, str) for s in sentences
        ):
            raise CorpusFormatError(
                f"line {line_no}: 'sentences' must be a list of strings"
            )
        if not sentences:
            raise CorpusFormatError(f"line {line_no}: 'sentences' must be non-empty")
        sentences = tuple(sentences)
    reference = payload.get("reference")
    if reference is not None and not isinstance(reference, str):
        raise CorpusFormatError(f"line {line_no}: 'reference' must be a string")
    extras = {
        key: value
        for key, value in payload.items()
        if key not in ("id", "text", "sentences", "reference")
    }
    return CorpusRecord(
        doc_id=doc_id,
        text=text,
        sentences=sentences,
        reference=reference,
        extras=extras,
    )


def load_corpus(path: str | os.PathLike) -> list[CorpusRecord]:
    """Read a JSONL corpus; blank lines are skipped, ids must be unique."""
    records: list[CorpusRecord] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                payload = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {line_no}: invalid JSON: {exc}") from exc
            record = _parse_record(payload, line_no)
            if record.doc_id in seen:
                raise CorpusFormatError(
                    f"line {line_no}: duplicate id {record.doc_id!r}"
                )
            seen.add(record.doc_id)
            records.append(record)
    return records


def save_corpus(records: Iterable[CorpusRecord], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            payload: dict = {"id": record.doc_id}
            if record.text is not None:
                payload["text"] = record.text
            if record.sentences is not None:
                payload["sentences"] = list(record.sentences)
            if record.reference is not None:
                payload["reference"] = record.reference
            payload.update(record.extras)
            handle.write(json.dumps(payload, ensure_ascii=False) + "\n")


def table_to_dict(table: LogProbTable) -> dict:
    payload = {
        "version": TABLE_VERSION,
        "n": table.n,
        "log_p": [float(x) for x in table.log_p],
        "log_p_cond": [[float(x) for x in row] for row in table.log_p_cond],
    }
    if table.metadata:
        payload["metadata"] = table.metadata
    return payload


def _require(condition: bool, field_name: str, message: str) -> None:
    if not condition:
        raise TableFormatError(f"field {field_name!r}: {message}")


def table_from_dict(payload: dict) -> LogProbTable:
    """Validate and construct a table from its JSON payload."""
    if not isinstance(payload, dict):
        raise TableFormatError("field '<root>': payload must be a JSON object")
    version = payload.get("version")
    _require(version == TABLE_VERSION, "version", f"expected {TABLE_VERSION}, got {version!r}")
    n = payload.get("n")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1, "n", f"expected a positive integer, got {n!r}")
    log_p = payload.get("log_p")
    _require(isinstance(log_p, list), "log_p", "expected a list")
    _require(len(log_p) == n, "log_p", f"expected length {n}, got {len(log_p)}")
    log_p_cond = payload.get("log_p_cond")
    _require(isinstance(log_p_cond, list), "log_p_cond", "expected a list of rows")
    _require(
        len(log_p_cond) == n, "log_p_cond", f"expected {n} rows, got {len(log_p_cond)}"
    )
    for i, row in enumerate(log_p_cond):
        _require(
            isinstance(row, list) and len(row) == n,
            f"log_p_cond[{i}]",
            f"expected a row of length {n}",
        )

    def _check_floats(values: Iterable, field_name: str) -> list[float]:
        out = []
        for j, value in enumerate(values):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TableFormatError(
                    f"field {field_name}[{j}]: expected a number, got {value!r}"
                )
            value = float(value)
            if not math.isfinite(value):
                raise TableFormatError(
                    f"field {field_name}[{j}]: non-finite value {value!r}"
                )
            out.append(value)
        return out

    log_p_values = _check_floats(log_p, "log_p")
    cond_values = [
        _check_floats(row, f"log_p_cond[{i}]") for i, row in enumerate(log_p_cond)
    ]
    metadata = payload.get("metadata")
    if metadata is not None and not isinstance(metadata, dict):
        raise TableFormatError("field 'metadata': expected an object")
    return LogProbTable(
        log_p=np.array(log_p_values, dtype=np.float64),
        log_p_cond=np.array(cond_values, dtype=np.float64),
        metadata=metadata or {},
    )


def save_table(table: LogProbTable, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(table_to_dict(table), handle)
        handle.write("\n")


def load_table(path: str | os.PathLike) -> LogProbTable:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise TableFormatError(f"field '<root>': invalid JSON: {exc}") from exc
    return table_from_dict(payload)


def table_path_for(tables_dir: str | os.PathLike, doc_id: str) -> str:
    """Conventional table location for a document id."""
    return os.path.join(os.fspath(tables_dir), f"{doc_id}.table.json")
