"""Sentence log-probability tables from a causal language model.

Produces the per-document table files consumed by table-driven
summarizers, as a batch CLI, an HTTP service, and a library. Includes
fine-tuning on two-sentence segments of in-domain documents.
"""

from .config import ScorerConfig, TINY_MODEL_ID
from .corpus import ScoreRecord, load_documents, split_text
from .finetune import FinetuneResult, adjacent_segments, finetune
from .model import BOS_ID, MARKER_NAME, VOCAB_SIZE, ByteTokenizer, load_model, save_checkpoint
from .scoring import TABLE_VERSION, SentenceScorer
from .service import ScoreRequest, create_app

__version__ = "0.1.0"

__all__ = [
    "ScorerConfig",
    "TINY_MODEL_ID",
    "ScoreRecord",
    "load_documents",
    "split_text",
    "FinetuneResult",
    "adjacent_segments",
    "finetune",
    "BOS_ID",
    "MARKER_NAME",
    "VOCAB_SIZE",
    "ByteTokenizer",
    "load_model",
    "save_checkpoint",
    "TABLE_VERSION",
    "SentenceScorer",
    "ScoreRequest",
    "create_app",
    "__version__",
]
