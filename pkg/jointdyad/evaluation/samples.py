"""
Topological comparison between an observed graph and model samples.
"""

from typing import Optional, Sequence

import numpy as np
import structlog

from jointdyad.config import settings
from jointdyad.evaluation.reports import SampleComparison
from jointdyad.generator.benchmark import draw_samples
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.graph.stats import graph_stats
from jointdyad.model.likelihood import check_dimensions
from jointdyad.model.params import ModelParams


logger = structlog.get_logger(__name__)


def compare_graphs(
    g_true: DirectedBinaryGraph,
    samples: Sequence[DirectedBinaryGraph]
) -> SampleComparison:
    """
    GraphStats of the observed graph and of each sample, all after dropping
    isolated nodes so that every graph is measured over its active nodes.
    """
    return SampleComparison(
        observed=graph_stats(g_true.without_isolated_nodes()),
        samples=[graph_stats(sample.without_isolated_nodes()) for sample in samples],
    )


def compare_samples(
    g_true: DirectedBinaryGraph,
    params: ModelParams,
    n_samples: int,
    rng: np.random.Generator,
    threads: Optional[int] = None
) -> SampleComparison:
    """
    Draw ``n_samples`` graphs from ``params`` and tabulate their statistics
    next to those of ``g_true``.
    """
    check_dimensions(g_true, params)
    graphs = draw_samples(
        params,
        n_samples,
        rng,
        threads=settings.runtime.resolve_threads(threads),
    )
    comparison = compare_graphs(g_true, graphs)
    logger.info(
        "samples_compared",
        n_samples=n_samples,
        observed_reciprocity=comparison.observed.reciprocity,
        sample_reciprocity=float(np.mean([s.reciprocity for s in comparison.samples])),
    )
    return comparison
