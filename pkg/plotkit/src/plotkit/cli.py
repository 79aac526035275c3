"""The ``plot`` command: results CSV in, runtime-curve SVG out.

    nsgalab-plot --in runs.csv --benchmark omm --out curves.svg [--log-y]
"""

from __future__ import annotations

import argparse
import sys

from .curves import PlotDataError, PlotSpec, plot_runtime_curves


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsgalab-plot", description=__doc__)
    parser.add_argument("--in", dest="input_csv", required=True, help="results CSV path")
    parser.add_argument("--benchmark", required=True, help="benchmark name to plot")
    parser.add_argument("--out", required=True, help="output image path (SVG)")
    parser.add_argument("--log-y", action="store_true", help="logarithmic y axis")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        input_csv=args.input_csv,
        benchmark=args.benchmark,
        output_path=args.out,
        log_y=args.log_y,
    )
    try:
        curves = plot_runtime_curves(spec)
    except PlotDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out} ({len(curves)} curves)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
