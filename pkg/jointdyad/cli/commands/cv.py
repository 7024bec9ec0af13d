"""
``cv``: k-fold cross-validation, optionally over several K.
"""

import argparse
from pathlib import Path

from jointdyad.cli.common import OutputWriter, build_config, fit_config_values, fit_flags, load_graph
from jointdyad.crossval.run import run_cv, run_cv_sweep
from jointdyad.inference.types import FitConfig
from jointdyad.utils.validation import parse_int_list


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("cv", parents=[parent], help="Cross-validate edge prediction")
    parser.add_argument("graph", type=Path, help="Edge-list file")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("-K", "--k", type=int, help="Number of communities")
    group.add_argument("--k-list", type=str, help="Comma separated K values; selects the best")
    parser.add_argument("--folds", type=int, default=5, help="Number of folds (default: 5)")
    fit_flags(parser)
    parser.set_defaults(handler=run, parser=parser)


def run(args: argparse.Namespace) -> int:
    g = load_graph(args.graph, args.undirected_input)
    k_values = parse_int_list(args.k_list) if args.k_list else [args.k]
    config = build_config(FitConfig, k=k_values[0], **fit_config_values(args))
    for k in k_values[1:]:
        build_config(FitConfig, k=k)

    writer = OutputWriter("cv", args)
    writer.record(
        config={**config.model_dump(), "k_values": k_values, "n_folds": args.folds},
        graph=args.graph,
    )

    if args.k_list:
        sweep = run_cv_sweep(g, k_values, config, n_folds=args.folds, seed=args.seed, threads=args.threads)
        writer.json("cv_sweep.json", sweep)
        writer.csv("cv_folds.csv", sweep.to_frame())
    else:
        report = run_cv(g, config, n_folds=args.folds, seed=args.seed, threads=args.threads)
        writer.json("cv_report.json", report)
        writer.csv("cv_folds.csv", report.to_frame())

    writer.finish()
    return 0
