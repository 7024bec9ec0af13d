"""
``eval``: community recovery and overlapping modularity.
"""

import argparse
from pathlib import Path

import pandas as pd

from jointdyad.cli.common import OutputWriter, align_graph, align_params, load_graph
from jointdyad.evaluation.community import AGGREGATIONS, cosine_similarity, overlapping_modularity
from jointdyad.evaluation.reports import ModularityReport
from jointdyad.model.params import load_params


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("eval", help="Evaluate inferred communities")
    metrics = parser.add_subparsers(dest="metric", required=True)

    cs = metrics.add_parser("cs", parents=[parent], help="Cosine similarity to planted memberships")
    cs.add_argument("--true-params", type=Path, required=True, help="Planted parameters JSON")
    cs.add_argument("--inferred-params", type=Path, required=True, help="Fitted parameters JSON")
    cs.set_defaults(handler=run_cs, parser=cs)

    modularity = metrics.add_parser("modularity", parents=[parent], help="Overlapping modularity")
    modularity.add_argument("graph", type=Path, help="Edge-list file")
    modularity.add_argument("--params", type=Path, required=True, help="Fitted parameters JSON")
    modularity.add_argument("--matrix", choices=["u", "v"], default="u", help="Membership matrix (default: u)")
    modularity.add_argument(
        "--aggregation",
        choices=[*AGGREGATIONS, "all"],
        default="all",
        help="Belonging aggregation (default: all)",
    )
    modularity.add_argument("--undirected-input", action="store_true", help="Each input line adds both directions")
    modularity.set_defaults(handler=run_modularity, parser=modularity)


def run_cs(args: argparse.Namespace) -> int:
    truth = load_params(args.true_params)
    inferred = align_params(truth, load_params(args.inferred_params))
    report = cosine_similarity(truth.u, truth.v, inferred.u, inferred.v)

    writer = OutputWriter("eval cs", args)
    writer.record(true_params=args.true_params, inferred_params=args.inferred_params)
    writer.json("cs_report.json", report)
    writer.csv("cs_report.csv", pd.DataFrame([report.model_dump(exclude={"permutation"})]))
    writer.finish()
    return 0


def run_modularity(args: argparse.Namespace) -> int:
    g = load_graph(args.graph, args.undirected_input)
    params = load_params(args.params)
    g = align_graph(g, params)

    memberships = params.u if args.matrix == "u" else params.v
    aggregations = list(AGGREGATIONS) if args.aggregation == "all" else [args.aggregation]
    report = ModularityReport(
        matrix=args.matrix,
        values={name: overlapping_modularity(g, memberships, name) for name in aggregations},
    )

    writer = OutputWriter("eval modularity", args)
    writer.record(config={"matrix": args.matrix, "aggregation": args.aggregation}, graph=args.graph, params=args.params)
    writer.json("modularity.json", report)
    writer.csv("modularity.csv", pd.DataFrame({
        "aggregation": list(report.values),
        "modularity": list(report.values.values()),
    }))
    writer.finish()
    return 0
