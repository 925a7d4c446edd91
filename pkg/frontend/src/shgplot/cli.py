"""Command-line interface: render figures and print numeric summaries."""

from __future__ import annotations

import argparse
import sys

from .csvio import GridMismatch, SchemaMismatch
from .figures import FIGURES, FigureSpec, render
from .summary import curve_minimum, reference_crossings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shgplot",
        description="Static figures and summaries from simulator CSV output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    plot = sub.add_parser("plot", help="render one figure to an image file")
    plot.add_argument("--figure", required=True, choices=sorted(FIGURES))
    plot.add_argument("--in", dest="inputs", nargs="+", required=True,
                      metavar="CSV")
    plot.add_argument("--labels", nargs="+", required=True, metavar="LABEL")
    plot.add_argument("--out", required=True, metavar="IMG")
    plot.add_argument("--error-bands", action="store_true",
                      help="shade +-1 standard error around each curve")
    plot.add_argument("--dpi", type=int, default=150)

    summ = sub.add_parser(
        "summary", help="print each curve's grid minimum and reference crossings"
    )
    summ.add_argument("--figure", required=True, choices=sorted(FIGURES))
    summ.add_argument("--in", dest="inputs", nargs="+", required=True,
                      metavar="CSV")
    summ.add_argument("--labels", nargs="+", required=True, metavar="LABEL")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            spec = FigureSpec(
                figure=args.figure,
                inputs=args.inputs,
                labels=args.labels,
                output=args.out,
                error_bands=args.error_bands,
                dpi=args.dpi,
            )
            path = render(spec)
            print(f"wrote {path}")
        else:
            if len(args.labels) != len(args.inputs):
                raise ValueError(
                    f"{len(args.inputs)} input files but {len(args.labels)} labels"
                )
            column, reference, _ = FIGURES[args.figure]
            for path, label in zip(args.inputs, args.labels):
                m = curve_minimum(path, column)
                crossings = reference_crossings(path, column, reference)
                where = (
                    ",".join(f"{z:.6g}" for z in crossings) if crossings else "-"
                )
                print(
                    f"{label}\tmin {column}={m.value:.12g} at zeta={m.zeta:g} "
                    f"(se {m.se:.3g})\tcrossings@{reference:g}: {where}"
                )
    except (OSError, ValueError, SchemaMismatch, GridMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
