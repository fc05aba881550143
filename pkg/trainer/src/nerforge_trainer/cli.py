"""Command line for the training adapter: train and predict."""

from __future__ import annotations

import argparse
import logging
import sys

from .adapter import predict, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nerforge-trainer",
        description="Fine-tune a transformer token classifier on CoNLL data "
                    "and write CoNLL predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train_cmd = sub.add_parser("train", help="fine-tune a base model")
    train_cmd.add_argument("--train", required=True, dest="train_path")
    train_cmd.add_argument("--dev", required=True, dest="dev_path")
    train_cmd.add_argument("--base-model", required=True)
    train_cmd.add_argument("--epochs", type=int, default=5)
    train_cmd.add_argument("--batch-size", type=int, default=16)
    train_cmd.add_argument("--learning-rate", type=float, default=5e-5)
    train_cmd.add_argument("--seed", type=int, default=0)
    train_cmd.add_argument("--adapt-corpus", default=None,
                           help="optional raw-text file for a masked-LM "
                                "adaptation pre-step")
    train_cmd.add_argument("--out", required=True)

    predict_cmd = sub.add_parser("predict", help="tag a CoNLL file")
    predict_cmd.add_argument("--model", required=True)
    predict_cmd.add_argument("--input", required=True)
    predict_cmd.add_argument("--batch-size", type=int, default=32)
    predict_cmd.add_argument("--out", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            out = train(
                train_path=args.train_path,
                dev_path=args.dev_path,
                base_model=args.base_model,
                out_dir=args.out,
                epochs=args.epochs,
                batch_size=args.batch_size,
                learning_rate=args.learning_rate,
                seed=args.seed,
                adapt_corpus=args.adapt_corpus,
            )
            print(f"model saved to {out}")
        else:
            out = predict(
                model_dir=args.model,
                input_path=args.input,
                output_path=args.out,
                batch_size=args.batch_size,
            )
            print(f"predictions written to {out}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
