"""Command-line wrapper: extract --corpus PATH --out PATH [options]."""

import argparse
import json
import sys

from .extract import DEFAULT_MODEL, POOLINGS, ExtractConfig, extract


def build_parser():
    parser = argparse.ArgumentParser(
        prog="extract",
        description="Embed a JSONL corpus into an EMB1 matrix with a causal LM.",
    )
    parser.add_argument("--corpus", required=True, help="JSONL corpus path")
    parser.add_argument("--model", default=DEFAULT_MODEL, help="model name or local path")
    parser.add_argument("--pooling", choices=POOLINGS, default="final_token")
    parser.add_argument("--max-tokens", type=int, default=512)
    parser.add_argument("--batch", type=int, default=8)
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--out", required=True, help="EMB1 output path")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = ExtractConfig(
        model_name=args.model,
        pooling=args.pooling,
        max_tokens=args.max_tokens,
        batch_size=args.batch,
        device=args.device,
    )
    try:
        summary = extract(args.corpus, config, args.out)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def entry():
    raise SystemExit(main())
