"""Model and tokenizer loading.

Three routes, keyed on ``ScorerConfig.model``:

- ``"tiny"``: a small GPT-2 built locally with a fixed seed over a
  257-token byte vocabulary (ids 0..255 are raw UTF-8 bytes, 256 is
  the lead token). Deterministic and download-free.
- an existing directory: a checkpoint previously written by
  ``save_checkpoint``; the marker file records the byte vocabulary.
- anything else: a hub id resolved through the transformers Auto
  classes with the model's own tokenizer.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Protocol

import torch
from transformers import GPT2Config, GPT2LMHeadModel
from transformers.utils import logging as _hf_logging

_hf_logging.disable_progress_bar()

__all__ = [
    "BOS_ID",
    "VOCAB_SIZE",
    "MARKER_NAME",
    "ByteTokenizer",
    "LoadedModel",
    "load_model",
    "save_checkpoint",
]

VOCAB_SIZE = 257
BOS_ID = 256
MARKER_NAME = "lmscore.json"

_TINY_SEED = 7193


class Tokenizer(Protocol):
    bos_id: int

    def encode(self, text: str) -> list[int]: ...


class ByteTokenizer:
    """UTF-8 bytes as token ids, plus one lead token."""

    bos_id = BOS_ID
    vocab_size = VOCAB_SIZE

    def encode(self, text: str) -> list[int]:
        return list(text.encode("utf-8"))


class _HubTokenizer:
    """Adapter giving a transformers tokenizer the byte-tokenizer shape."""

    def __init__(self, inner):
        self._inner = inner
        bos = inner.bos_token_id
        if bos is None:
            bos = inner.eos_token_id
        if bos is None:
            raise ValueError("tokenizer defines neither a BOS nor an EOS token")
        self.bos_id = int(bos)

    def encode(self, text: str) -> list[int]:
        return list(self._inner(text, add_special_tokens=False)["input_ids"])


@dataclass(frozen=True)
class LoadedModel:
    model: object
    tokenizer: object
    position_cap: int | None


def _build_tiny() -> GPT2LMHeadModel:
    spec = GPT2Config(
        vocab_size=VOCAB_SIZE,
        n_positions=512,
        n_embd=64,
        n_layer=2,
        n_head=4,
        bos_token_id=BOS_ID,
        eos_token_id=BOS_ID,
        embd_pdrop=0.0,
        attn_pdrop=0.0,
        resid_pdrop=0.0,
    )
    torch.manual_seed(_TINY_SEED)
    return GPT2LMHeadModel(spec)


def _position_cap(model) -> int | None:
    for name in ("max_position_embeddings", "n_positions"):
        value = getattr(model.config, name, None)
        if value is not None:
            return int(value)
    return None


def load_model(config) -> LoadedModel:
    """Resolve the configured model; failures surface as ValueError."""
    from .config import TINY_MODEL_ID

    if config.model == TINY_MODEL_ID:
        model = _build_tiny()
        tokenizer = ByteTokenizer()
    elif os.path.isdir(config.model):
        marker = os.path.join(config.model, MARKER_NAME)
        if not os.path.exists(marker):
            raise ValueError(
                f"{config.model!r} is not an lmscore checkpoint (missing {MARKER_NAME})"
            )
        try:
            model = GPT2LMHeadModel.from_pretrained(config.model)
        except Exception as exc:
            raise ValueError(f"cannot load checkpoint {config.model!r}: {exc}") from exc
        tokenizer = ByteTokenizer()
    else:
        try:
            from transformers import AutoModelForCausalLM, AutoTokenizer

            model = AutoModelForCausalLM.from_pretrained(config.model)
            tokenizer = _HubTokenizer(AutoTokenizer.from_pretrained(config.model))
        except ValueError:
            raise
        except Exception as exc:
            raise ValueError(f"cannot load model {config.model!r}: {exc}") from exc
    model.to(config.device)
    model.eval()
    return LoadedModel(model=model, tokenizer=tokenizer, position_cap=_position_cap(model))


def save_checkpoint(model, out_dir: str | os.PathLike, *, base: str) -> str:
    """Write a reloadable checkpoint; the marker pins the byte vocabulary."""
    out_dir = os.fspath(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    model.save_pretrained(out_dir)
    marker = {
        "format": "lmscore-checkpoint",
        "tokenizer": "byte-257",
        "bos_id": BOS_ID,
        "base_model": base,
    }
    with open(os.path.join(out_dir, MARKER_NAME), "w", encoding="utf-8") as handle:
        json.dump(marker, handle, indent=2)
        handle.write("\n")
    return out_dir
