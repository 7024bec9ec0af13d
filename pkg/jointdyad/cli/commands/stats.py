"""
``stats``: summary statistics of an edge list.
"""

import argparse
from pathlib import Path

import pandas as pd

from jointdyad.cli.common import OutputWriter, load_graph
from jointdyad.graph.stats import graph_stats


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("stats", parents=[parent], help="N, M, <k>, reciprocity and clustering")
    parser.add_argument("graph", type=Path, help="Edge-list file")
    parser.add_argument("--undirected-input", action="store_true", help="Each input line adds both directions")
    parser.set_defaults(handler=run, parser=parser)


def run(args: argparse.Namespace) -> int:
    stats = graph_stats(load_graph(args.graph, args.undirected_input))

    writer = OutputWriter("stats", args)
    writer.record(graph=args.graph)
    writer.json("stats.json", stats)
    writer.csv("stats.csv", pd.DataFrame([stats.model_dump()]))
    writer.finish()
    return 0
