"""Scorer configuration."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["ScorerConfig", "TINY_MODEL_ID"]

# Built-in deterministic small model; no download required.
TINY_MODEL_ID = "tiny"


@dataclass(frozen=True)
class ScorerConfig:
    """Settings for table production.

    ``model`` is the built-in ``"tiny"`` model, a checkpoint directory
    written by this package, or a hub id of a pretrained causal LM.
    ``separator`` sits between the condition sentence and the scored
    sentence; it belongs to the prefix and is never scored itself.
    ``max_length`` caps the full token sequence (lead token included);
    a pair over the cap loses tokens from the left of its condition,
    but a sentence whose own tokens exceed the cap is an error.
    """

    model: str = TINY_MODEL_ID
    device: str = "cpu"
    separator: str = " "
    max_length: int = 512
    batch_size: int = 16

    def __post_init__(self) -> None:
        if not self.model:
            raise ValueError("model must be non-empty")
        if self.max_length < 2:
            raise ValueError(f"max_length must be >= 2, got {self.max_length}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
