"""Command line front end.

Subcommands:
  split      sentence-split raw text
  select     run a scorer + selector over a corpus, write a JSONL report
  oracle     shorthand for select with the reference-based oracle
  evaluate   score a candidate file against a reference file
  tune       grid-search the two objective weights on a corpus
  ablate     relevance-only / redundancy-only / combined comparison
  histogram  position histogram of a previously written report
  make-toy   write the built-in demo corpus and its score table
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import SelectionResult
from .dataio import CorpusRecord, save_corpus, save_table, table_path_for
from .evaluation import position_histogram, rouge_report
from .pipeline import (
    ENV_SCORER_URL,
    K_PRESETS,
    SCORERS,
    SELECTORS,
    PipelineError,
    RunConfig,
    run_ablation_study,
    run_grid_search,
    run_pipeline,
)
from .synthetic import TOY_DOC_ID, make_toy_corpus
from .text import split_sentences

__all__ = ["main"]

# RunConfig fields settable from the command line; flag names follow
# the field names with dashes.
_CONFIG_FLAG_FIELDS = (
    "corpus_path",
    "tables_dir",
    "output_path",
    "scorer",
    "selector",
    "lambda1",
    "lambda2",
    "k",
    "dataset",
    "num_keywords",
    "include_self_pair",
    "rouge_beta",
    "scorer_url",
)


def _cmd_split(args: argparse.Namespace) -> int:
    if args.text is not None:
        text = args.text
    else:
        with open(args.infile, "r", encoding="utf-8") as handle:
            text = handle.read()
    for sentence in split_sentences(text):
        print(sentence)
    return 0


def _build_config(args: argparse.Namespace) -> RunConfig:
    overrides = {name: getattr(args, name, None) for name in _CONFIG_FLAG_FIELDS}
    # store_true flags default to False; only an explicit flag overrides
    if not overrides.get("include_self_pair"):
        overrides["include_self_pair"] = None
    if args.config is not None:
        return RunConfig.from_file(args.config, **overrides)
    supplied = {key: value for key, value in overrides.items() if value is not None}
    if "corpus_path" not in supplied:
        raise PipelineError("a corpus is required (--corpus or --config)")
    return RunConfig(**supplied)


def _print_failures(failures) -> None:
    for failure in failures:
        print(f"skipped {failure['doc_id']}: {failure['reason']}", file=sys.stderr)


def _cmd_select(args: argparse.Namespace) -> int:
    result = run_pipeline(_build_config(args))
    summary = result.summary
    mean_f1 = summary["mean_rouge1_f1"]
    print(
        f"scorer={summary['scorer']} selector={summary['selector']} "
        f"k={summary['k']} processed={summary['processed']}/{summary['documents']} "
        f"mean_rouge1_f1={'n/a' if mean_f1 is None else format(mean_f1, '.6f')} "
        f"fraction_first_3={summary['fraction_first_3']:.6f}"
    )
    _print_failures(result.failures)
    return 0 if result.ok else 1


def _cmd_evaluate(args: argparse.Namespace) -> int:
    with open(args.candidate, "r", encoding="utf-8") as handle:
        candidate = handle.read()
    with open(args.reference, "r", encoding="utf-8") as handle:
        reference = handle.read()
    for name, score in rouge_report(candidate, reference, beta=args.beta).items():
        print(
            f"{name}: precision={score.precision:.6f} "
            f"recall={score.recall:.6f} f1={score.f1:.6f}"
        )
    return 0


def _cmd_tune(args: argparse.Namespace) -> int:
    result, failures = run_grid_search(_build_config(args))
    print(
        f"lambda1={result.lambda1} lambda2={result.lambda2} "
        f"mean_rouge1_f1={result.mean_rouge1_f1:.6f} cells={result.cells_evaluated}"
    )
    _print_failures(failures)
    return 0 if not failures else 1


def _cmd_ablate(args: argparse.Namespace) -> int:
    rows, failures = run_ablation_study(_build_config(args))
    for row in rows:
        print(
            f"{row.mode}: lambda1={row.lambda1} lambda2={row.lambda2} "
            f"mean_rouge1_f1={row.mean_rouge1_f1:.6f}"
        )
    _print_failures(failures)
    return 0 if not failures else 1


def _cmd_histogram(args: argparse.Namespace) -> int:
    results: list[SelectionResult] = []
    lengths: list[int] = []
    with open(args.report, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            if row.get("type") != "document":
                continue
            results.append(
                SelectionResult(
                    selected=tuple(row["selected_indices"]), deltas=(), objective=0.0
                )
            )
            lengths.append(int(row["n_sentences"]))
    histogram = position_histogram(results, lengths)
    for position, count in enumerate(histogram.counts):
        print(f"position {position}: {count}")
    print(f"fraction_first_3={histogram.fraction_first_3:.6f}")
    return 0


def _cmd_make_toy(args: argparse.Namespace) -> int:
    doc, table, reference = make_toy_corpus()
    tables_dir = os.path.join(args.out_dir, "tables")
    os.makedirs(tables_dir, exist_ok=True)
    corpus_path = os.path.join(args.out_dir, "corpus.jsonl")
    record = CorpusRecord(
        doc_id=TOY_DOC_ID,
        sentences=tuple(s.text for s in doc.sentences),
        reference=reference,
    )
    save_corpus([record], corpus_path)
    table_path = table_path_for(tables_dir, TOY_DOC_ID)
    save_table(table, table_path)
    print(corpus_path)
    print(table_path)
    return 0


def _add_run_options(
    parser: argparse.ArgumentParser, *, scorer: bool = False, selector: bool = False
) -> None:
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument(
        "--corpus", dest="corpus_path", help="JSONL corpus path"
    )
    parser.add_argument(
        "--tables", dest="tables_dir", help="directory of per-document score tables"
    )
    if scorer:
        parser.add_argument(
            "--scorer", choices=SCORERS, help="pairwise scorer (default pmi)"
        )
    if selector:
        parser.add_argument(
            "--selector", choices=SELECTORS, help="selection strategy (default greedy)"
        )
    parser.add_argument("--lambda1", type=float, help="relevance weight")
    parser.add_argument("--lambda2", type=float, help="redundancy weight")
    parser.add_argument("--k", type=int, help="summary length in sentences")
    parser.add_argument(
        "--dataset",
        choices=sorted(K_PRESETS),
        help="named dataset whose preset k applies when --k is absent",
    )
    parser.add_argument(
        "--num-keywords",
        dest="num_keywords",
        type=int,
        help="restrict tf-idf vocabulary to the top-N keywords",
    )
    parser.add_argument(
        "--include-self-pair",
        action="store_true",
        help="include the self pair in relevance totals",
    )
    parser.add_argument(
        "--rouge-beta", dest="rouge_beta", type=float, help="ROUGE F-score beta"
    )
    parser.add_argument(
        "--scorer-url",
        dest="scorer_url",
        help=f"remote scoring service base URL (overrides ${ENV_SCORER_URL})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmisum",
        description="Unsupervised extractive summarization via pointwise "
        "mutual information between sentences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_split = sub.add_parser("split", help="sentence-split text")
    group = p_split.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="inline text to split")
    group.add_argument("--in", dest="infile", help="file of text to split")
    p_split.set_defaults(func=_cmd_split)

    p_select = sub.add_parser("select", help="select sentences over a corpus")
    _add_run_options(p_select, scorer=True, selector=True)
    p_select.add_argument(
        "--out", dest="output_path", help="report JSONL destination"
    )
    p_select.set_defaults(func=_cmd_select)

    p_oracle = sub.add_parser(
        "oracle", help="reference-based oracle extraction over a corpus"
    )
    _add_run_options(p_oracle)
    p_oracle.add_argument(
        "--out", dest="output_path", help="report JSONL destination"
    )
    p_oracle.set_defaults(func=_cmd_select, selector="oracle")

    p_eval = sub.add_parser("evaluate", help="ROUGE of candidate vs reference")
    p_eval.add_argument("--candidate", required=True, help="candidate text file")
    p_eval.add_argument("--reference", required=True, help="reference text file")
    p_eval.add_argument("--beta", type=float, default=1.0, help="F-score beta")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_tune = sub.add_parser("tune", help="grid-search lambda1/lambda2")
    _add_run_options(p_tune)
    p_tune.set_defaults(func=_cmd_tune)

    p_ablate = sub.add_parser("ablate", help="single-term ablation study")
    _add_run_options(p_ablate)
    p_ablate.set_defaults(func=_cmd_ablate)

    p_hist = sub.add_parser("histogram", help="position histogram of a report")
    p_hist.add_argument("--report", required=True, help="report JSONL path")
    p_hist.set_defaults(func=_cmd_histogram)

    p_toy = sub.add_parser("make-toy", help="write the demo corpus and table")
    p_toy.add_argument("--out-dir", required=True, help="destination directory")
    p_toy.set_defaults(func=_cmd_make_toy)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PipelineError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
