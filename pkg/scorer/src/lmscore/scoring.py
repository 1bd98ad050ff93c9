"""Sentence log-probability tables from a causal language model.

For a document of n sentences the scorer emits the JSON table payload
consumed by table-file readers:

    {"version": 1, "n": n, "log_p": [...], "log_p_cond": [[...]], "metadata": {...}}

``log_p[j]`` is the summed token log-probability of sentence j scored
alone behind the lead token; ``log_p_cond[i][j]`` conditions sentence
j on the prefix (sentence i + separator). The diagonal is filled with
``log_p``. Scoring is pure inference (eval mode, no sampling), so the
same document always yields the same table.
"""

from __future__ import annotations

from typing import Sequence

import torch
import torch.nn.functional as F

from .config import ScorerConfig
from .model import load_model

__all__ = ["TABLE_VERSION", "SentenceScorer"]

TABLE_VERSION = 1


class SentenceScorer:
    def __init__(self, config: ScorerConfig | None = None):
        self.config = config or ScorerConfig()
        loaded = load_model(self.config)
        self._model = loaded.model
        self._tokenizer = loaded.tokenizer
        cap = loaded.position_cap
        self._cap = self.config.max_length if cap is None else min(self.config.max_length, cap)

    @property
    def sequence_cap(self) -> int:
        return self._cap

    def score_document(self, sentences: Sequence[str]) -> dict:
        """Emit the table payload for one document."""
        texts = list(sentences)
        if not texts:
            raise ValueError("sentences must be non-empty")
        for j, text in enumerate(texts):
            if not isinstance(text, str) or not text.strip():
                raise ValueError(f"sentence {j} is empty or not text")
        n = len(texts)
        targets = [self._tokenizer.encode(text) for text in texts]
        prefixes = [self._tokenizer.encode(text + self.config.separator) for text in texts]
        for j, ids in enumerate(targets):
            if 1 + len(ids) > self._cap:
                raise ValueError(
                    f"sentence {j} alone exceeds the sequence cap "
                    f"({1 + len(ids)} > {self._cap})"
                )

        # (prefix, target, destination) jobs: one unconditional pass per
        # sentence, then every ordered off-diagonal pair
        jobs: list[tuple[list[int], list[int], tuple[str, int, int]]] = []
        truncated: list[list[int]] = []
        for j in range(n):
            jobs.append(([], targets[j], ("p", 0, j)))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                prefix = prefixes[i]
                overflow = 1 + len(prefix) + len(targets[j]) - self._cap
                if overflow > 0:
                    prefix = prefix[overflow:]
                    truncated.append([i, j])
                jobs.append((prefix, targets[j], ("c", i, j)))

        log_p = [0.0] * n
        log_p_cond = [[0.0] * n for _ in range(n)]
        step = self.config.batch_size
        for start in range(0, len(jobs), step):
            for slot, value in self._score_batch(jobs[start : start + step]):
                kind, i, j = slot
                if kind == "p":
                    log_p[j] = value
                else:
                    log_p_cond[i][j] = value
        for j in range(n):
            log_p_cond[j][j] = log_p[j]

        metadata: dict = {
            "model": self.config.model,
            "separator": self.config.separator,
        }
        if truncated:
            metadata["truncated_pairs"] = truncated
        return {
            "version": TABLE_VERSION,
            "n": n,
            "log_p": log_p,
            "log_p_cond": log_p_cond,
            "metadata": metadata,
        }

    def _score_batch(self, jobs) -> list[tuple[tuple[str, int, int], float]]:
        bos = self._tokenizer.bos_id
        device = self.config.device
        batch = len(jobs)
        width = max(1 + len(prefix) + len(target) for prefix, target, _ in jobs)
        input_ids = torch.zeros((batch, width), dtype=torch.long)
        attention = torch.zeros((batch, width), dtype=torch.long)
        for b, (prefix, target, _) in enumerate(jobs):
            seq = [bos] + prefix + target
            input_ids[b, : len(seq)] = torch.tensor(seq, dtype=torch.long)
            attention[b, : len(seq)] = 1
        with torch.no_grad():
            logits = self._model(
                input_ids=input_ids.to(device), attention_mask=attention.to(device)
            ).logits.to("cpu")
        log_probs = F.log_softmax(logits.float(), dim=-1)
        out = []
        for b, (prefix, target, slot) in enumerate(jobs):
            start = 1 + len(prefix)
            positions = torch.arange(start, start + len(target))
            token_ids = input_ids[b, positions]
            values = log_probs[b, positions - 1, token_ids]
            out.append((slot, float(values.double().sum().item())))
        return out
