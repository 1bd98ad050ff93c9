"""Command line front end.

Subcommands:
  score     write one table file per corpus document
  serve     run the HTTP scoring service
  finetune  train on two-sentence segments and write a checkpoint
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import ScorerConfig
from .corpus import load_documents

__all__ = ["main"]


def _config_from(args: argparse.Namespace) -> ScorerConfig:
    return ScorerConfig(
        model=args.model,
        device=args.device,
        separator=args.separator,
        max_length=args.max_length,
        batch_size=args.batch_size,
    )


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", default="tiny", help="model id, checkpoint dir, or 'tiny'")
    parser.add_argument("--device", default="cpu", help="torch device")
    parser.add_argument("--separator", default=" ", help="condition/target separator")
    parser.add_argument("--max-length", dest="max_length", type=int, default=512)
    parser.add_argument("--batch-size", dest="batch_size", type=int, default=16)


def _cmd_score(args: argparse.Namespace) -> int:
    from .scoring import SentenceScorer

    records = load_documents(args.infile)
    scorer = SentenceScorer(_config_from(args))
    os.makedirs(args.out_dir, exist_ok=True)
    failures = 0
    for record in records:
        try:
            payload = scorer.score_document(record.sentences)
        except ValueError as exc:
            print(f"skipped {record.doc_id}: {exc}", file=sys.stderr)
            failures += 1
            continue
        path = os.path.join(args.out_dir, f"{record.doc_id}.table.json")
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle)
            handle.write("\n")
        print(path)
    return 0 if failures == 0 else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_config_from(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_finetune(args: argparse.Namespace) -> int:
    from .finetune import finetune

    records = load_documents(args.corpus)
    result = finetune(
        [record.sentences for record in records],
        args.out_dir,
        _config_from(args),
        epochs=args.epochs,
        lr=args.lr,
        seed=args.seed,
    )
    print(
        f"checkpoint={result.checkpoint_dir} steps={len(result.losses)} "
        f"first_loss={result.losses[0]:.4f} last_loss={result.losses[-1]:.4f}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmscore",
        description="Sentence log-probability tables from a causal language model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score a corpus into table files")
    p_score.add_argument("--in", dest="infile", required=True, help="JSONL corpus")
    p_score.add_argument("--out", dest="out_dir", required=True, help="tables directory")
    _add_model_options(p_score)
    p_score.set_defaults(func=_cmd_score)

    p_serve = sub.add_parser("serve", help="run the HTTP scoring service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8080)
    _add_model_options(p_serve)
    p_serve.set_defaults(func=_cmd_serve)

    p_tune = sub.add_parser("finetune", help="fine-tune on two-sentence segments")
    p_tune.add_argument("--corpus", required=True, help="JSONL training corpus")
    p_tune.add_argument("--out", dest="out_dir", required=True, help="checkpoint directory")
    p_tune.add_argument("--epochs", type=int, default=1)
    p_tune.add_argument("--lr", type=float, default=5e-3)
    p_tune.add_argument("--seed", type=int, default=0)
    _add_model_options(p_tune)
    p_tune.set_defaults(func=_cmd_finetune)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
