"""Fine-tuning on two-sentence segments.

Each document contributes its adjacent sentence pairs, joined by the
configured separator, as independent training sequences behind the
lead token. Reference summaries never enter the training set. The
result is a checkpoint directory loadable through ScorerConfig.model.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import torch
import torch.nn.functional as F

from .config import ScorerConfig
from .model import load_model, save_checkpoint

__all__ = ["FinetuneResult", "adjacent_segments", "finetune"]


@dataclass(frozen=True)
class FinetuneResult:
    checkpoint_dir: str
    losses: tuple[float, ...]


def adjacent_segments(
    documents: Sequence[Sequence[str]], separator: str = " "
) -> list[str]:
    """Training segments: every adjacent sentence pair of every
    document, so an n-sentence document yields n - 1 segments."""
    segments = []
    for sentences in documents:
        for left, right in zip(sentences, sentences[1:]):
            segments.append(left + separator + right)
    return segments


def finetune(
    documents: Sequence[Sequence[str]],
    out_dir: str | os.PathLike,
    config: ScorerConfig | None = None,
    *,
    epochs: int = 1,
    lr: float = 5e-3,
    seed: int = 0,
) -> FinetuneResult:
    """Train for the given epochs and write a checkpoint; returns the
    per-step losses in order."""
    config = config or ScorerConfig()
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    segments = adjacent_segments(documents, config.separator)
    if not segments:
        raise ValueError("fine-tuning needs at least one document with two sentences")

    loaded = load_model(config)
    model = loaded.model
    tokenizer = loaded.tokenizer
    cap = config.max_length
    if loaded.position_cap is not None:
        cap = min(cap, loaded.position_cap)
    # segments over the cap keep their newest tokens
    encoded = [
        ([tokenizer.bos_id] + tokenizer.encode(segment))[:cap] for segment in segments
    ]

    torch.manual_seed(seed)
    model.train()
    optimizer = torch.optim.AdamW(model.parameters(), lr=lr)
    losses: list[float] = []
    device = config.device
    for _ in range(epochs):
        for start in range(0, len(encoded), config.batch_size):
            chunk = encoded[start : start + config.batch_size]
            width = max(len(seq) for seq in chunk)
            input_ids = torch.zeros((len(chunk), width), dtype=torch.long)
            attention = torch.zeros((len(chunk), width), dtype=torch.long)
            for b, seq in enumerate(chunk):
                input_ids[b, : len(seq)] = torch.tensor(seq, dtype=torch.long)
                attention[b, : len(seq)] = 1
            input_ids = input_ids.to(device)
            attention = attention.to(device)
            logits = model(input_ids=input_ids, attention_mask=attention).logits
            labels = input_ids[:, 1:].clone()
            labels[attention[:, 1:] == 0] = -100
            loss = F.cross_entropy(
                logits[:, :-1].reshape(-1, logits.shape[-1]),
                labels.reshape(-1),
                ignore_index=-100,
            )
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            losses.append(float(loss.item()))
    model.eval()
    checkpoint_dir = save_checkpoint(model, out_dir, base=config.model)
    return FinetuneResult(checkpoint_dir=checkpoint_dir, losses=tuple(losses))
