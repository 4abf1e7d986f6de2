"""Command-line entry point: ``plot <kind> --csv <paths> --out <file>``."""

from __future__ import annotations

import argparse
import sys

from .data import SchemaError
from .render import KINDS, PlotRequest, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render figures from experiment CSV files.",
    )
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--csv", nargs="+", required=True,
                        help="one or more input CSV files")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--band", type=float, default=1.0,
                        help="band half-width in standard deviations (default 1)")
    parser.add_argument("--log-t", action="store_true",
                        help="logarithmic t axis on curve plots")
    return parser


def cli_dispatch(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    request = PlotRequest(csv_paths=args.csv, kind=args.kind, out=args.out,
                          band=args.band, log_t=args.log_t)
    try:
        render(request)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
