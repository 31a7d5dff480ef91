"""Command line interface.

Exit codes: 0 success, 1 internal error or failed timing verdict,
2 bad input, 3 infeasible budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._validation import check_budget
from .bench import run_bench
from .core import InfeasibleBudgetError, SegmentationError, TimeSeries, to_plot_csv
from .csvio import SeriesParseError, format_series, read_series, write_series
from .evaluate import leave_one_out, run_experiment
from .methods import canonical, get_segmenter, min_budget
from .synth import GeneratorSpec, generate

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3

METHOD_CHOICES = ("dp", "td-const", "td-linear", "td-adaptive",
                  "topdown-constant", "topdown-linear", "topdown-adaptive")


def _window(text: str) -> tuple[int, int]:
    try:
        start, length = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be START:LEN, got {text!r}") from None
    return start, length


def _add_input_options(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("xy", "y", "auto"), default="auto",
                   help="columns per row: x,y or y only (default: detect)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--header", action="store_true", help="skip the first data row")
    p.add_argument("--window", type=_window, metavar="START:LEN",
                   help="segment only LEN points starting at index START")


def _load(path, args) -> TimeSeries:
    series = read_series(path, args.format, args.delimiter, args.header)
    if args.window is not None:
        series = series.window(*args.window)
    return series


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_segment(args) -> int:
    series = _load(args.input, args)
    method = canonical(args.method)
    k = check_budget(args.k, min_budget(method, args.max_degree))
    seg = get_segmenter(method, args.max_degree)(series, k)
    report = {"method": method, "k": k, "max_degree": args.max_degree, **seg.to_dict()}
    if args.loo:
        report["loo"] = leave_one_out(series, method, k, args.max_degree, args.threads).to_dict()
    _emit(json.dumps(report, indent=2) + "\n", args.output)
    if args.plot_data:
        Path(args.plot_data).write_text(to_plot_csv(series, seg))
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = GeneratorSpec(args.kind, args.n, args.seed, args.mu, args.sigma)
    series = generate(spec)
    if args.output is None or args.output == "-":
        sys.stdout.write(format_series(series))
    else:
        write_series(args.output, series)
        print(f"{spec.kind} n={spec.n} seed={spec.seed} mu={spec.mu} "
              f"sigma={spec.sigma} -> {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.trials < 1:
        raise SegmentationError(f"trials must be >= 1, got {args.trials}")
    for k in args.k:
        check_budget(k, 2)
    if args.suite == "csv-dir":
        if args.input_dir is None:
            raise SegmentationError("--input-dir is required for the csv-dir suite")
        paths = sorted(Path(args.input_dir).glob("*.csv"))
        if not paths:
            raise SeriesParseError(f"no .csv files in {args.input_dir}")
        paths = paths[:args.trials] if args.trials_given else paths
        series = [_load(p, args) for p in paths]
        labels = [p.stem for p in paths]
        per_series = True
    else:
        kind = "white-noise" if args.suite == "whitenoise" else "random-walk"
        series = [generate(GeneratorSpec(kind, args.n, args.seed + t, 0.0, args.sigma))
                  for t in range(args.trials)]
        labels = None
        per_series = False
    methods = ("topdown-adaptive", "topdown-linear", "topdown-constant")
    if not args.no_dp:
        methods = methods + ("dp",)
    report = run_experiment(series, args.k, with_loo=args.loo, maxdeg=args.max_degree,
                            labels=labels, per_series_rows=per_series, methods=methods,
                            title=f"{args.suite} ({len(series)} series)",
                            threads=args.threads)
    text = report.to_text()
    sys.stdout.write(text)
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n")
        (out / "report.txt").write_text(text)
        (out / "plot.csv").write_text(report.plot_csv())
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.n != sorted(args.n):
        raise SegmentationError("--n sizes must be ascending")
    check_budget(args.k, min_budget(args.method, args.max_degree))
    report = run_bench(args.method, args.n, args.k, args.repeats, args.seed, args.max_degree)
    print(report.summary())
    if args.output:
        Path(args.output).write_text(report.to_csv())
    return EXIT_INTERNAL if report.verdict() is False else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyseg",
        description="Adaptive piecewise polynomial segmentation of time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="segment one CSV series and print JSON")
    p.add_argument("input", nargs="?", help="CSV file (or use --input)")
    p.add_argument("--input", dest="input_flag")
    p.add_argument("--method", choices=METHOD_CHOICES, default="td-adaptive")
    p.add_argument("--k", type=int, required=True, help="regressor budget")
    p.add_argument("--max-degree", type=int, default=2,
                   help="regressors per interval at most (2: constant or linear)")
    p.add_argument("--output", help="JSON destination (default stdout)")
    p.add_argument("--plot-data", help="write x,y,model,segment_id CSV here")
    p.add_argument("--loo", action="store_true", help="add leave-one-out errors")
    p.add_argument("--threads", type=int, default=1)
    _add_input_options(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("generate", help="write a seeded synthetic series as CSV")
    p.add_argument("--kind", choices=("noise", "walk", "white-noise", "random-walk"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--output", help="CSV destination (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("experiment", help="compare methods over many series")
    p.add_argument("--suite", choices=("whitenoise", "randomwalk", "csv-dir"), required=True)
    p.add_argument("--input-dir", help="directory of CSV series for the csv-dir suite")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--k", type=int, nargs="+", default=[10, 20, 30])
    p.add_argument("--n", type=int, default=200, help="length of synthetic series")
    p.add_argument("--seed", type=int, default=0, help="seed of the first trial")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--loo", action="store_true", help="also compute leave-one-out errors")
    p.add_argument("--no-dp", action="store_true", help="skip the optimal segmentation")
    p.add_argument("--output", help="directory for report.json, report.txt, plot.csv")
    p.add_argument("--threads", type=int, default=1)
    _add_input_options(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bench", help="time a method on random walks of growing size")
    p.add_argument("--method", choices=METHOD_CHOICES, default="td-adaptive")
    p.add_argument("--n", type=int, nargs="+", required=True, help="ascending sizes")
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="timing CSV destination")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "segment":
        args.input = args.input_flag or args.input
        if args.input is None:
            parser.error("segment needs an input file")
    if args.command == "experiment":
        args.trials_given = args.trials is not None
        if args.trials is None:
            args.trials = 10
    try:
        return args.func(args)
    except InfeasibleBudgetError as exc:
        print(f"polyseg: infeasible budget: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (SeriesParseError, SegmentationError, ValueError) as exc:
        print(f"polyseg: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"polyseg: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
