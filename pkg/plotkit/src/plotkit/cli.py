"""Command-line entry point: plotkit <figure-kind> --in ... --metric ... --out ..."""
from __future__ import annotations

import argparse
import sys

from .data import METRICS
from .errors import PlotkitError
from .figures import FIGURE_KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Render benchmark figures from a results.csv table")
    parser.add_argument("kind", choices=FIGURE_KINDS)
    parser.add_argument("--in", dest="input", required=True,
                        help="harness results.csv")
    parser.add_argument("--metric", choices=METRICS, default="wall_clock")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--linear", action="store_true",
                        help="linear y-axis instead of the default log scale")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(args.kind, args.metric, args.input, args.out,
                      log_scale=not args.linear)
    try:
        render(spec)
    except (PlotkitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
