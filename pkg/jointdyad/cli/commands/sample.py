"""
``sample``: draw networks from fitted parameters.
"""

import argparse
from pathlib import Path

from jointdyad.cli.common import OutputWriter, align_graph, load_graph
from jointdyad.config import settings
from jointdyad.evaluation.samples import compare_graphs
from jointdyad.generator.benchmark import draw_samples
from jointdyad.model.params import load_params
from jointdyad.utils.random import substream


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("sample", parents=[parent], help="Sample networks from parameters")
    parser.add_argument("params", type=Path, help="Parameters JSON")
    parser.add_argument("--n-samples", type=int, default=5, help="Number of samples (default: 5)")
    parser.add_argument("--compare", type=Path, default=None, help="Observed edge list to compare against")
    parser.add_argument("--undirected-input", action="store_true", help="Each input line adds both directions")
    parser.set_defaults(handler=run, parser=parser)


def run(args: argparse.Namespace) -> int:
    params = load_params(args.params)
    observed = None
    if args.compare is not None:
        observed = load_graph(args.compare, args.undirected_input)
        observed = align_graph(observed, params)

    graphs = draw_samples(
        params,
        args.n_samples,
        substream(args.seed, "samples"),
        threads=settings.runtime.resolve_threads(args.threads),
    )

    writer = OutputWriter("sample", args)
    inputs = {"params": args.params}
    if args.compare is not None:
        inputs["compare"] = args.compare
    writer.record(config={"n_samples": args.n_samples}, **inputs)

    for s, graph in enumerate(graphs):
        writer.edges(f"sample_{s:03d}.edges", graph)

    if observed is not None:
        comparison = compare_graphs(observed, graphs)
        writer.json("comparison.json", comparison)
        writer.csv("comparison.csv", comparison.to_frame())

    writer.finish()
    return 0
