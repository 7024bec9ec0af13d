"""
``generate``: planted benchmark instances, single or swept.
"""

import argparse
from itertools import product
from pathlib import Path

import pandas as pd
import pydantic
import structlog

from jointdyad.cli.common import OutputWriter, build_config
from jointdyad.config import settings
from jointdyad.generator.benchmark import BenchmarkConfig, generate_benchmark
from jointdyad.utils.exceptions import ValidationError
from jointdyad.utils.random import derive_seed, substream
from jointdyad.utils.validation import parse_float_list
from jointdyad.workflow.runner import JobRunner, raise_first_failure


logger = structlog.get_logger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "generate",
        parents=[parent],
        help="Sample planted benchmark networks",
    )
    parser.add_argument("-N", "--n-nodes", type=int, default=None, help="Number of nodes")
    parser.add_argument("-K", "--k", type=int, default=None, help="Number of communities")
    parser.add_argument("--avg-degree", type=float, default=None, help="Target average degree <k>")
    parser.add_argument("--eta", type=float, default=None, help="Pair-interaction parameter")
    parser.add_argument("--eta-list", type=str, default=None, help="Comma separated eta values (sweep)")
    parser.add_argument("--avg-degree-list", type=str, default=None, help="Comma separated <k> values (sweep)")
    parser.add_argument("--replicas", type=int, default=1, help="Samples per grid point (default: 1)")
    parser.add_argument("--overlap", type=float, default=None, help="Fraction of mixed-membership nodes")
    parser.add_argument("--alpha", type=float, default=None, help="Dirichlet concentration of mixed nodes")
    parser.add_argument("--ratio", type=float, default=None, help="Off-diagonal to diagonal affinity ratio")
    parser.add_argument("--config", type=Path, default=None, help="BenchmarkConfig JSON; flags override it")
    parser.set_defaults(handler=run, parser=parser)


def _base_values(args: argparse.Namespace) -> dict:
    values = {}
    if args.config is not None:
        try:
            values = BenchmarkConfig.model_validate_json(args.config.read_text()).model_dump()
            values.pop("seed", None)
        except pydantic.ValidationError as e:
            raise ValidationError(f"invalid benchmark config {args.config}: {e}") from e
    flags = {
        "n_nodes": args.n_nodes,
        "k": args.k,
        "avg_degree": args.avg_degree,
        "eta": args.eta,
        "overlap_fraction": args.overlap,
        "dirichlet_alpha": args.alpha,
        "assortativity_ratio": args.ratio,
    }
    values.update({key: value for key, value in flags.items() if value is not None})
    return values


def run(args: argparse.Namespace) -> int:
    values = _base_values(args)
    for field, flag in (("n_nodes", "-N/--n-nodes"), ("k", "-K/--k")):
        if field not in values:
            args.parser.error(f"{flag} is required unless given by --config")
    if "eta" not in values and args.eta_list is None:
        args.parser.error("--eta or --eta-list is required unless given by --config")
    if "avg_degree" not in values and args.avg_degree_list is None:
        args.parser.error("--avg-degree or --avg-degree-list is required unless given by --config")
    if args.replicas < 1:
        args.parser.error("--replicas must be >= 1")

    sweep = args.eta_list is not None or args.avg_degree_list is not None or args.replicas > 1
    if not sweep:
        return _generate_single(args, values)
    return _generate_sweep(args, values)


def _generate_single(args: argparse.Namespace, values: dict) -> int:
    config = build_config(BenchmarkConfig, **values, seed=args.seed)
    instance = generate_benchmark(config)

    writer = OutputWriter("generate", args)
    writer.record(config={**config.model_dump(), **instance.summary()})
    writer.edges("graph.edges", instance.graph)
    writer.json("true_params.json", instance.true_params.to_document())
    writer.finish()
    return 0


def _generate_sweep(args: argparse.Namespace, values: dict) -> int:
    etas = parse_float_list(args.eta_list) if args.eta_list else [values["eta"]]
    degrees = parse_float_list(args.avg_degree_list) if args.avg_degree_list else [values["avg_degree"]]
    grid = list(product(enumerate(etas), enumerate(degrees), range(args.replicas)))

    configs = [
        build_config(
            BenchmarkConfig,
            **{**values, "eta": eta, "avg_degree": degree},
            seed=derive_seed(substream(args.seed, "instance", e, d, r)),
        )
        for (e, eta), (d, degree), r in grid
    ]

    runner = JobRunner(threads=settings.runtime.resolve_threads(args.threads), name="benchmark")
    instances = raise_first_failure(runner.run([
        (f"instance-{index}", lambda config=config: generate_benchmark(config))
        for index, config in enumerate(configs)
    ]))

    writer = OutputWriter("generate", args)
    writer.record(config={
        **{key: value for key, value in values.items() if key not in ("eta", "avg_degree")},
        "eta_list": etas,
        "avg_degree_list": degrees,
        "replicas": args.replicas,
    })

    rows = []
    for ((_, eta), (_, degree), replica), config, instance in zip(grid, configs, instances):
        name = f"eta{eta:g}_k{degree:g}_r{replica:02d}"
        writer.edges(f"{name}/graph.edges", instance.graph)
        writer.json(f"{name}/true_params.json", instance.true_params.to_document())
        rows.append({
            "instance": name,
            "eta": eta,
            "avg_degree": degree,
            "replica": replica,
            "seed": config.seed,
            **instance.summary(),
        })

    writer.csv("instances.csv", pd.DataFrame(rows))
    writer.finish()
    logger.info("benchmark_sweep_completed", instances=len(rows))
    return 0
