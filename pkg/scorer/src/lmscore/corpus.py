"""JSONL document reader shared by the batch CLI and fine-tuning.

Records carry a unique "id" and exactly one of "text" (split here on
terminal punctuation) or "sentences". A "reference" field, when
present, is carried along but never used as training or scoring input.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass

__all__ = ["ScoreRecord", "load_documents", "split_text"]

_SPLIT_RE = re.compile(r"(?<=[.!?])\s+")


def split_text(text: str) -> list[str]:
    return [part for part in _SPLIT_RE.split(text.strip()) if part]


@dataclass(frozen=True)
class ScoreRecord:
    doc_id: str
    sentences: tuple[str, ...]


def load_documents(path: str | os.PathLike) -> list[ScoreRecord]:
    records: list[ScoreRecord] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                payload = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {line_no}: invalid JSON: {exc}") from exc
            if not isinstance(payload, dict):
                raise ValueError(f"line {line_no}: record must be a JSON object")
            doc_id = payload.get("id")
            if not isinstance(doc_id, str) or not doc_id:
                raise ValueError(f"line {line_no}: missing or empty 'id'")
            if doc_id in seen:
                raise ValueError(f"line {line_no}: duplicate id {doc_id!r}")
            seen.add(doc_id)
            text = payload.get("text")
            sentences = payload.get("sentences")
            if (text is None) == (sentences is None):
                raise ValueError(
                    f"line {line_no}: exactly one of 'text' or 'sentences' is required"
                )
            if sentences is None:
                if not isinstance(text, str):
                    raise ValueError(f"line {line_no}: 'text' must be a string")
                sentences = split_text(text)
            if not isinstance(sentences, (list, tuple)) or not all(
                isinstance(s, str) and s.strip() for s in sentences
            ):
                raise ValueError(
                    f"line {line_no}: 'sentences' must be non-blank strings"
                )
            if not sentences:
                raise ValueError(f"line {line_no}: document has no sentences")
            records.append(ScoreRecord(doc_id=doc_id, sentences=tuple(sentences)))
    if not records:
        raise ValueError(f"{os.fspath(path)!r} holds no documents")
    return records
