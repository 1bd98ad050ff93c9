import pytest

from lmscore import ScorerConfig, SentenceScorer, finetune

# two sentences of similar length with disjoint content, used to build
# a checkpoint that has seen verbatim repetition
REPEAT_A = "Apples ripen in the orchard during autumn."
REPEAT_B = "Trains depart from the station every hour."


@pytest.fixture(scope="session")
def tiny_scorer():
    return SentenceScorer(ScorerConfig())


@pytest.fixture(scope="session")
def repeat_sentences():
    return REPEAT_A, REPEAT_B


@pytest.fixture(scope="session")
def repeat_checkpoint(tmp_path_factory):
    """Checkpoint fine-tuned on self-repeating two-sentence documents."""
    docs = [[REPEAT_A, REPEAT_A] for _ in range(25)] + [
        [REPEAT_B, REPEAT_B] for _ in range(25)
    ]
    out = tmp_path_factory.mktemp("checkpoints") / "repeat"
    return finetune(docs, out, ScorerConfig(), epochs=12, lr=5e-3)
