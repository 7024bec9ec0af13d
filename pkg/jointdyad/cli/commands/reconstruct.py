"""
``reconstruct``: score every dyad of an observed network.
"""

import argparse
from pathlib import Path

from jointdyad.cli.common import OutputWriter, align_graph, load_graph
from jointdyad.model.params import load_params
from jointdyad.reconstruct.reconstruct import DEFAULT_THRESHOLD, reconstruct


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("reconstruct", parents=[parent], help="Reconstruct a network from parameters")
    parser.add_argument("graph", type=Path, help="Edge-list file")
    parser.add_argument("params", type=Path, help="Parameters JSON")
    parser.add_argument(
        "--threshold",
        type=float,
        default=DEFAULT_THRESHOLD,
        help=f"Export entries scoring above this (default: {DEFAULT_THRESHOLD})",
    )
    parser.add_argument(
        "--score",
        choices=["marginal", "conditional"],
        default="conditional",
        help="Score compared against the threshold (default: conditional)",
    )
    parser.add_argument("--undirected-input", action="store_true", help="Each input line adds both directions")
    parser.set_defaults(handler=run, parser=parser)


def run(args: argparse.Namespace) -> int:
    g = load_graph(args.graph, args.undirected_input)
    params = load_params(args.params)
    g = align_graph(g, params)

    report = reconstruct(g, params, threshold=args.threshold, score_kind=args.score)

    writer = OutputWriter("reconstruct", args)
    writer.record(
        config={"threshold": args.threshold, "score": args.score},
        graph=args.graph,
        params=args.params,
    )
    writer.json("reconstruction.json", report)
    writer.csv("reconstruction.csv", report.export_frame())
    writer.finish()
    return 0
