"""Command line front end: render-figures --in DIR --fig {1..7|all} --out DIR."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .artifacts import SchemaError
from .figspec import FIGURE_IDS, spec_for
from .render import render


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="render-figures",
        description="Render the seven standard figures from kgpilot scan/trace output.",
    )
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory holding fig1..fig7 run subdirectories, "
                             "or a single run directory")
    parser.add_argument("--fig", default="all",
                        choices=[str(n) for n in FIGURE_IDS] + ["all"],
                        help="which figure to render (default: all)")
    parser.add_argument("--out", dest="out_dir", required=True,
                        help="directory for figN.png and figN.svg")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"render-figures: error: {exc}", file=sys.stderr)
        return 1
    in_dir = Path(args.in_dir)
    out_dir = Path(args.out_dir)
    if not in_dir.is_dir():
        print(f"render-figures: error: --in {in_dir} is not a directory", file=sys.stderr)
        return 1
    figures = list(FIGURE_IDS) if args.fig == "all" else [int(args.fig)]
    status = 0
    for n in figures:
        try:
            png, svg = render(spec_for(n, in_dir), out_dir)
        except SchemaError as exc:
            print(f"render-figures: error: {exc}", file=sys.stderr)
            status = 2
        else:
            print(f"fig{n}: wrote {png} and {svg}")
    return status


if __name__ == "__main__":
    sys.exit(main())
