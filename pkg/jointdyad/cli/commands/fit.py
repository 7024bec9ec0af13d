"""
``fit``: EM fit of an edge list.
"""

import argparse
from pathlib import Path

import pandas as pd

from jointdyad.cli.common import OutputWriter, build_config, fit_config_values, fit_flags, load_graph
from jointdyad.inference.fit import fit
from jointdyad.inference.types import FitConfig


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("fit", parents=[parent], help="Fit the model to an edge list")
    parser.add_argument("graph", type=Path, help="Edge-list file")
    parser.add_argument("-K", "--k", type=int, required=True, help="Number of communities")
    fit_flags(parser)
    parser.set_defaults(handler=run, parser=parser)


def run(args: argparse.Namespace) -> int:
    g = load_graph(args.graph, args.undirected_input)
    config = build_config(FitConfig, k=args.k, **fit_config_values(args))
    result = fit(g, config, threads=args.threads)

    writer = OutputWriter("fit", args)
    writer.record(config=config.model_dump(), graph=args.graph)
    writer.json("params.json", result.params.to_document())
    writer.json("fit_result.json", result.to_report())
    writer.csv("loglik_trace.csv", pd.DataFrame({
        "iteration": range(len(result.loglik_trace)),
        "loglik": result.loglik_trace,
    }))
    writer.finish()
    return 0
