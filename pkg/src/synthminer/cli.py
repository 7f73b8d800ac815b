"""Command-line interface.

Subcommands: discover, order, evaluate, convert. Exit codes: 0 success,
1 I/O or data error, 2 usage error (argparse's convention), 3 discovery
abort.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import eventlog, pnml
from .errors import (
    ConfigError,
    DiscoveryAborted,
    LogParseError,
    NetStructureError,
    SynthMinerError,
)
from .miner import DiscoveryConfig, discover
from .ordering import STRATEGY_NAMES, OrderingStrategy, make_order
from .quality import evaluate
from .report import render_figures, write_iterations_csv, write_report_json

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_ABORT = 3


def _add_log_args(parser):
    parser.add_argument("--log", required=True, help="event log file (.xes, .csv or .json)")
    parser.add_argument("--format", choices=["xes", "csv", "json"],
                        help="log format (default: by file extension)")
    parser.add_argument("--case-col", help="CSV column holding the case id")
    parser.add_argument("--activity-col", help="CSV column holding the activity label")
    parser.add_argument("--time-col", help="CSV column holding the event timestamp")


def _load_log(args, parser):
    fmt = args.format
    if fmt is None:
        lower = args.log.lower()
        if lower.endswith(".xes"):
            fmt = "xes"
        elif lower.endswith(".csv"):
            fmt = "csv"
        elif lower.endswith(".json"):
            fmt = "json"
        else:
            parser.error(f"cannot infer log format from {args.log!r}; use --format")
    if fmt == "xes":
        return eventlog.parse_xes(args.log)
    if fmt == "json":
        return eventlog.load_json(args.log)
    if not args.case_col or not args.activity_col:
        parser.error("CSV logs need --case-col and --activity-col")
    return eventlog.parse_csv(args.log, args.case_col, args.activity_col, args.time_col)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="synthminer",
        description="Incremental discovery of sound free-choice workflow nets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_discover = sub.add_parser("discover", help="discover a workflow net from a log")
    _add_log_args(p_discover)
    p_discover.add_argument("--ordering", default="bfs-start", choices=STRATEGY_NAMES,
                            help="activity-ordering strategy (default: bfs-start)")
    p_discover.add_argument("--threshold", default="0.9",
                            help="causal-strength threshold (default: 0.9)")
    p_discover.add_argument("--coverage", default="0.95",
                            help="variant coverage kept before mining (default: 0.95)")
    p_discover.add_argument("--max-subset-size", type=int, default=3,
                            help="max |R|,|S| for abstraction candidates (default: 3)")
    p_discover.add_argument("--patterns", default="seq,dual,choice,par,skip,loop",
                            help="comma-separated pattern subset (default: all)")
    p_discover.add_argument("--path-budget", type=int, default=50000,
                            help="elementary-path enumeration budget (default: 50000)")
    p_discover.add_argument("--tau-depth", type=int, default=5,
                            help="silent-transition lookahead depth (default: 5)")
    p_discover.add_argument("--jobs", type=int, default=1,
                            help="parallel candidate scoring threads (default: 1)")
    p_discover.add_argument("--export-pnml", help="write the final net as PNML")
    p_discover.add_argument("--export-dot", help="write the final net as GraphViz DOT")
    p_discover.add_argument("--report", help="write the discovery report as JSON")
    p_discover.add_argument("--csv", dest="csv_out", help="write the per-iteration CSV")
    p_discover.add_argument("--plots", help="directory for rendered report figures")

    p_order = sub.add_parser("order", help="print activity orders for a log")
    _add_log_args(p_order)
    p_order.add_argument("--strategy", default="all",
                         choices=("all",) + STRATEGY_NAMES,
                         help="one strategy or all five (default: all)")

    p_eval = sub.add_parser("evaluate", help="score a PNML net against a log")
    _add_log_args(p_eval)
    p_eval.add_argument("--net", required=True, help="PNML file")
    p_eval.add_argument("--tau-depth", type=int, default=5)
    p_eval.add_argument("--out", help="write the score JSON here instead of stdout")

    p_convert = sub.add_parser("convert", help="convert a PNML net")
    p_convert.add_argument("--in", dest="infile", required=True, help="input PNML file")
    p_convert.add_argument("--to", dest="target", required=True, choices=["dot", "pnml"])
    p_convert.add_argument("--out", required=True, help="output file")

    return parser


def cmd_discover(args, parser):
    log = _load_log(args, parser)
    patterns = tuple(p.strip() for p in args.patterns.split(",") if p.strip())
    for p in patterns:
        if p not in ("seq", "dual", "choice", "par", "skip", "loop"):
            parser.error(f"unknown pattern {p!r}")
    config = DiscoveryConfig(
        strategy=OrderingStrategy.from_name(args.ordering),
        threshold=Fraction(args.threshold),
        coverage=Fraction(args.coverage),
        max_subset_size=args.max_subset_size,
        patterns=patterns,
        path_budget=args.path_budget,
        tau_depth=args.tau_depth,
        jobs=args.jobs,
    )
    wf, report = discover(log, config)
    if args.export_pnml:
        with open(args.export_pnml, "wb") as fh:
            fh.write(pnml.write_pnml(wf))
    if args.export_dot:
        with open(args.export_dot, "w", encoding="utf-8") as fh:
            fh.write(pnml.write_dot(wf))
    if args.report:
        write_report_json(report, args.report)
    if args.csv_out:
        write_iterations_csv(report, args.csv_out)
    if args.plots:
        render_figures(report, args.plots)
    summary = report.to_json()["totals"]
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_order(args, parser):
    log = _load_log(args, parser)
    if not log.activities:
        print("error: log contains no activities", file=sys.stderr)
        return EXIT_IO
    names = STRATEGY_NAMES if args.strategy == "all" else (args.strategy,)
    result = {
        name: make_order(log, OrderingStrategy.from_name(name)) for name in names
    }
    if len(names) == 1:
        print(json.dumps(result[names[0]]))
    else:
        print(json.dumps(result, indent=2))
    return EXIT_OK


def cmd_evaluate(args, parser):
    log = _load_log(args, parser)
    wf = pnml.parse_pnml(args.net)
    score = evaluate(wf, log, args.tau_depth)
    payload = json.dumps(
        {"fitness": score.fitness, "precision": score.precision, "f1": score.f1},
        indent=2,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return EXIT_OK


def cmd_convert(args, parser):
    wf = pnml.parse_pnml(args.infile)
    if args.target == "dot":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(pnml.write_dot(wf))
    else:
        with open(args.out, "wb") as fh:
            fh.write(pnml.write_pnml(wf))
    return EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "discover": cmd_discover,
        "order": cmd_order,
        "evaluate": cmd_evaluate,
        "convert": cmd_convert,
    }
    try:
        return handlers[args.command](args, parser)
    except DiscoveryAborted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (OSError, LogParseError, ConfigError, NetStructureError, SynthMinerError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
