"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 PGM parse failure, 3 invalid flag value.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .fitting import FitParams, fit_gmm
from .gmm import model_to_json
from .histogram import compute_histogram, dynamic_range, histogram_to_csv, smooth
from .image_io import PgmError, load_pgm, save_pgm
from .metrics import compare_methods, rows_to_csv
from .transform import enhance, lut_to_csv

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_FLAG = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAG, f"{self.prog}: error: {message}\n")


def _ranged(kind, lo=None, hi=None, lo_open=False, hi_open=False):
    left = "(" if lo_open else "["
    right = ")" if hi_open or hi is None else "]"
    desc = f"{left}{'-inf' if lo is None else lo}, {'inf' if hi is None else hi}{right}"

    def parse(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {kind.__name__} in {desc}, got {text!r}") from None
        bad = (lo is not None and (v <= lo if lo_open else v < lo)) or \
              (hi is not None and (v >= hi if hi_open else v > hi))
        if bad:
            raise argparse.ArgumentTypeError(f"value {text} outside valid range {desc}")
        return v

    return parse


def _add_fit_flags(p):
    p.add_argument("--alpha", type=_ranged(float, 0, 1, lo_open=True), default=0.95,
                   help="fraction of histogram mass to cover, in (0, 1] (default 0.95)")
    p.add_argument("--sigma0", type=_ranged(float, 0, lo_open=True), default=2.0,
                   help="std of the mean-search kernel in levels (default 2.0)")
    p.add_argument("--smooth", type=_ranged(int, 1), default=2,
                   help="half-width of the histogram averaging filter (default 2)")
    p.add_argument("--max-components", type=_ranged(int, 1), default=20,
                   help="hard cap on fitted components (default 20)")
    p.add_argument("--significance", type=_ranged(float, 0, 1, hi_open=True), default=0.001,
                   help="mass fraction below which a bin is ignored for the dynamic range (default 0.001)")


def _params(args) -> FitParams:
    return FitParams(alpha=args.alpha, sigma0=args.sigma0, smooth_n=args.smooth,
                     max_components=args.max_components, significance=args.significance)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_enhance(args) -> int:
    image = load_pgm(args.input)
    out, model, lut = enhance(image, _params(args))
    if len(model) == 0:
        print(f"warning: {args.input} has a degenerate intensity range; output equals input",
              file=sys.stderr)
    save_pgm(args.output, out)
    if args.dump_gmm:
        h = compute_histogram(image)
        _emit(model_to_json(model, dynamic_range(h, args.significance)) + "\n", args.dump_gmm)
    if args.dump_lut:
        _emit(lut_to_csv(lut), args.dump_lut)
    return EXIT_OK


def cmd_fit(args) -> int:
    h = compute_histogram(load_pgm(args.input))
    model = fit_gmm(h, _params(args))
    _emit(model_to_json(model, dynamic_range(h, args.significance)) + "\n", args.out)
    return EXIT_OK


def cmd_histogram(args) -> int:
    h = compute_histogram(load_pgm(args.input))
    if args.smooth:
        h = smooth(h, args.smooth)
    _emit(histogram_to_csv(h), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    params = _params(args)
    rows, failed = [], False
    for path in args.inputs:
        try:
            image = load_pgm(path)
        except (OSError, PgmError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            failed = True
            continue
        rows.extend(compare_methods(image, name=path, params=params, repeats=args.repeats))
    _emit(rows_to_csv(rows), args.out)
    return EXIT_IO if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmmce", description="Gaussian-mixture histogram contrast enhancement")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enhance", help="enhance a PGM image")
    p.add_argument("input")
    p.add_argument("output")
    _add_fit_flags(p)
    p.add_argument("--dump-gmm", metavar="PATH", help="write the fitted model as JSON")
    p.add_argument("--dump-lut", metavar="PATH", help="write the transfer function as CSV")
    p.set_defaults(func=cmd_enhance)

    p = sub.add_parser("fit", help="fit a mixture to an image histogram and print it as JSON")
    p.add_argument("input")
    _add_fit_flags(p)
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("histogram", help="export the 256-bin histogram as CSV")
    p.add_argument("input")
    p.add_argument("--smooth", type=_ranged(int, 1), default=None,
                   help="apply the moving-average filter with this half-width first")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("compare", help="compare GMMCE and HE on one or more images")
    p.add_argument("inputs", nargs="+")
    _add_fit_flags(p)
    p.add_argument("--repeats", type=_ranged(int, 1), default=1,
                   help="time each method this many times and keep the fastest")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PgmError as exc:
        print(f"error: cannot parse PGM: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
