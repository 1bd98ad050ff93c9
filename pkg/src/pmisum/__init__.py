"""Unsupervised extractive summarization scored by pointwise mutual
information between sentences, with tf-idf and positional baselines,
native ROUGE evaluation and corpus tooling."""

from .core import (
    Document,
    Hyperparams,
    LogProbTable,
    PmiScoreProvider,
    SelectionResult,
    Sentence,
    objective,
    pmi_red,
    pmi_rel,
    redundancy_of_set,
    relevance_of,
)
from .dataio import (
    CorpusFormatError,
    CorpusRecord,
    TableFormatError,
    load_corpus,
    load_table,
    save_corpus,
    save_table,
    table_from_dict,
    table_path_for,
    table_to_dict,
)
from .evaluation import (
    AblationRow,
    GridSearchResult,
    PositionHistogram,
    RougeScore,
    grid_search_lambdas,
    oracle_extract,
    position_histogram,
    rouge_l,
    rouge_n,
    rouge_report,
    run_ablation,
)
from .pipeline import (
    ENV_SCORER_URL,
    K_PRESETS,
    SCORERS,
    SELECTORS,
    PipelineError,
    PipelineResult,
    RunConfig,
    run_ablation_study,
    run_grid_search,
    run_pipeline,
    write_report,
)
from .selection import (
    BRUTE_FORCE_GUARD,
    brute_force_select,
    extract_sentences,
    lead_k,
    objective_value,
    pagerank,
    textrank_select,
)
from .synthetic import (
    MatrixScoreProvider,
    make_greedy_trap_table,
    make_independent_table,
    make_random_table,
    make_table_from_matrix,
    make_toy_corpus,
)
from .text import DEFAULT_ABBREVIATIONS, split_sentences, tokenize
from .tfidf import TfidfModel, TfidfScoreProvider, build_tfidf, cosine

__version__ = "0.1.0"

__all__ = [
    "__version__",
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
    "tokenize",
    "split_sentences",
    "DEFAULT_ABBREVIATIONS",
    "TfidfModel",
    "build_tfidf",
    "cosine",
    "TfidfScoreProvider",
    "BRUTE_FORCE_GUARD",
    "objective_value",
    "extract_sentences",
    "brute_force_select",
    "lead_k",
    "pagerank",
    "textrank_select",
    "RougeScore",
    "rouge_n",
    "rouge_l",
    "rouge_report",
    "oracle_extract",
    "GridSearchResult",
    "grid_search_lambdas",
    "PositionHistogram",
    "position_histogram",
    "AblationRow",
    "run_ablation",
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
    "K_PRESETS",
    "SCORERS",
    "SELECTORS",
    "ENV_SCORER_URL",
    "PipelineError",
    "RunConfig",
    "PipelineResult",
    "run_pipeline",
    "run_grid_search",
    "run_ablation_study",
    "write_report",
    "MatrixScoreProvider",
    "make_table_from_matrix",
    "make_independent_table",
    "make_random_table",
    "make_toy_corpus",
    "make_greedy_trap_table",
]
