"""
Planted-structure benchmark.

Memberships start as an equal-size hard partition; a fraction of the
nodes is then re-drawn from a symmetric Dirichlet. The affinity matrix
is assortative with p1 = <k> K / N on the diagonal and p2 = ratio * p1
off it. A sparsity constant ζ rescales every rate so that the expected
edge count hits N <k> / 2, and each dyad is drawn from its joint pmf.
"""

from typing import List, Optional

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import bisect

from jointdyad.config import settings
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.graph.stats import reciprocity
from jointdyad.model.dyad import joint_probabilities, lambda_matrix, marginal_mean_matrix
from jointdyad.model.params import ModelParams
from jointdyad.utils.exceptions import ValidationError, ZetaSolverError
from jointdyad.utils.random import derive_seed, substream
from jointdyad.workflow.runner import JobRunner, raise_first_failure


logger = structlog.get_logger(__name__)

# Dyads per independent uniform stream in sample_graph
DYAD_BLOCK = 1 << 16
ZETA_RTOL = 1e-12
ZETA_RESIDUAL_RTOL = 1e-6


class BenchmarkConfig(BaseModel):
    """Shape of a planted instance"""
    model_config = ConfigDict(frozen=True)

    n_nodes: int = Field(ge=2)
    k: int = Field(ge=1)
    avg_degree: float = Field(gt=0)
    eta: float = Field(gt=0)
    overlap_fraction: float = Field(
        default_factory=lambda: settings.benchmark.overlap_fraction, ge=0, le=1
    )
    dirichlet_alpha: float = Field(
        default_factory=lambda: settings.benchmark.dirichlet_alpha, gt=0
    )
    assortativity_ratio: float = Field(
        default_factory=lambda: settings.benchmark.assortativity_ratio, gt=0, le=1
    )
    seed: int = 0

    @property
    def expected_edges(self) -> float:
        return self.n_nodes * self.avg_degree / 2.0

    @model_validator(mode="after")
    def _check_density(self) -> "BenchmarkConfig":
        if self.k > self.n_nodes:
            raise ValueError(f"k={self.k} exceeds n_nodes={self.n_nodes}")
        if self.expected_edges >= self.n_nodes * (self.n_nodes - 1):
            raise ValueError(
                f"expected edge count {self.expected_edges} must be below the "
                f"{self.n_nodes * (self.n_nodes - 1)} ordered pairs"
            )
        return self


class PlantedInstance(BaseModel):
    """Sampled graph with the parameters that generated it"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    graph: DirectedBinaryGraph
    true_params: ModelParams
    zeta: float
    expected_edges: float
    config: Optional[BenchmarkConfig] = None

    def summary(self) -> dict:
        return {
            "zeta": self.zeta,
            "expected_edges": self.expected_edges,
            "realized_edges": self.graph.n_edges,
            "realized_reciprocity": reciprocity(self.graph),
        }


def block_assignment(n_nodes: int, k: int) -> np.ndarray:
    """Contiguous near-equal blocks; the first N mod K blocks get one extra node."""
    sizes = np.full(k, n_nodes // k)
    sizes[: n_nodes % k] += 1
    return np.repeat(np.arange(k), sizes)


def synthesize_params(config: BenchmarkConfig, rng: np.random.Generator) -> ModelParams:
    """
    Planted memberships and assortative affinity (before rescaling).

    Overlapping nodes are chosen uniformly over all nodes and share one
    Dirichlet row between u and v.
    """
    n, k = config.n_nodes, config.k
    if k > n:
        raise ValidationError(f"k={k} exceeds n_nodes={n}")

    u = np.eye(k)[block_assignment(n, k)]
    n_overlap = int(round(config.overlap_fraction * n))
    if n_overlap:
        chosen = rng.choice(n, size=n_overlap, replace=False)
        u[chosen] = rng.dirichlet(np.full(k, config.dirichlet_alpha), size=n_overlap)

    p1 = config.avg_degree * k / n
    p2 = config.assortativity_ratio * p1
    w = np.full((k, k), p2)
    np.fill_diagonal(w, p1)

    # Row i is node "i" of the written edge list
    labels = [str(i) for i in range(n)]
    return ModelParams.create(u=u, v=u.copy(), w=w, eta=config.eta, node_labels=labels)


def expected_edges(params: ModelParams, zeta: float = 1.0) -> float:
    """Σ_{i≠j} E[A_ij] after multiplying every rate by ζ."""
    return float(marginal_mean_matrix(zeta * lambda_matrix(params), params.eta).sum())


def solve_zeta(params: ModelParams, target_edges: float) -> float:
    """
    ζ such that the expected edge count of ζλ equals ``target_edges``.

    The expected count is increasing in ζ; the root is bracketed by
    doubling/halving from 1 and refined by bisection.

    Raises:
        ValidationError: If the target is outside (0, N(N-1))
        ZetaSolverError: If every rate is zero or the target is unreachable
    """
    n = params.n_nodes
    pairs = n * (n - 1)
    if not 0 < target_edges < pairs:
        raise ValidationError(f"target_edges must lie in (0, {pairs}), got {target_edges}")

    lam = lambda_matrix(params)
    supported = int(np.count_nonzero(lam > 0))
    if supported == 0:
        raise ZetaSolverError("all rates are zero: no ζ reaches a positive edge count")
    if target_edges >= supported:
        raise ZetaSolverError(
            f"target {target_edges} unreachable: only {supported} ordered pairs have positive rate"
        )

    def residual(zeta: float) -> float:
        return float(marginal_mean_matrix(zeta * lam, params.eta).sum()) - target_edges

    lo = hi = 1.0
    while residual(hi) < 0:
        hi *= 2.0
        if not np.isfinite(hi):
            raise ZetaSolverError("failed to bracket ζ from above")
    while residual(lo) > 0:
        lo /= 2.0
        if lo == 0.0:
            raise ZetaSolverError("failed to bracket ζ from below")

    if residual(lo) == 0.0:
        zeta = lo
    elif residual(hi) == 0.0:
        zeta = hi
    else:
        zeta = bisect(residual, lo, hi, xtol=1e-300, rtol=ZETA_RTOL, maxiter=2000)

    achieved = residual(zeta) + target_edges
    if abs(achieved - target_edges) > ZETA_RESIDUAL_RTOL * target_edges:
        raise ZetaSolverError(
            f"ζ={zeta} leaves expected edges {achieved}, target {target_edges}"
        )

    logger.debug("zeta_solved", zeta=zeta, target_edges=target_edges, bracket=(lo, hi))
    return float(zeta)


def dyad_uniforms(seed: int, n_dyads: int) -> np.ndarray:
    """
    One uniform per dyad in upper-triangle order.

    Dyad d takes its number from block d // DYAD_BLOCK, each block being an
    independent stream keyed by (seed, block), so any partition of the
    dyads over workers reproduces the same draws.
    """
    uniforms = np.empty(n_dyads)
    for block, start in enumerate(range(0, n_dyads, DYAD_BLOCK)):
        stop = min(start + DYAD_BLOCK, n_dyads)
        uniforms[start:stop] = substream(seed, "dyads", block).random(stop - start)
    return uniforms


def sample_graph(params: ModelParams, rng: np.random.Generator) -> DirectedBinaryGraph:
    """
    Draw every unordered dyad from its joint pmf by inverse CDF over the
    states 00, 01, 10, 11. Dyads are independent; no self-loops.
    """
    n = params.n_nodes
    lam = lambda_matrix(params)
    iu, ju = np.triu_indices(n, k=1)

    probs = joint_probabilities(lam[iu, ju], lam[ju, iu], params.eta)
    first = probs[:, 0]
    second = probs[:, 0] + probs[:, 1]
    third = 1.0 - probs[:, 3]

    r = dyad_uniforms(derive_seed(rng), iu.size)
    state = (r >= first).astype(np.int8) + (r >= second) + (r >= third)

    forward = state >= 2          # A_ij = 1
    backward = (state % 2) == 1   # A_ji = 1
    edges = list(zip(iu[forward].tolist(), ju[forward].tolist()))
    edges += list(zip(ju[backward].tolist(), iu[backward].tolist()))

    return DirectedBinaryGraph(n, edges, node_labels=params.node_labels)


def generate_benchmark(config: BenchmarkConfig) -> PlantedInstance:
    """
    Synthesize parameters, solve ζ for E[M] = N <k> / 2, fold ζ into w
    and sample the graph.
    """
    params = synthesize_params(config, substream(config.seed, "memberships"))
    target = config.expected_edges
    zeta = solve_zeta(params, target)
    true_params = params.replace(w=params.w * zeta)
    graph = sample_graph(true_params, substream(config.seed, "sampling"))

    instance = PlantedInstance(
        graph=graph,
        true_params=true_params,
        zeta=zeta,
        expected_edges=expected_edges(true_params),
        config=config,
    )
    logger.info("benchmark_generated", eta=config.eta, avg_degree=config.avg_degree, **instance.summary())
    return instance


def draw_samples(
    params: ModelParams,
    n_samples: int,
    rng: np.random.Generator,
    threads: int = 1
) -> List[DirectedBinaryGraph]:
    """Independent graphs from ``params``; sample s uses its own stream."""
    if n_samples < 1:
        raise ValidationError(f"n_samples must be >= 1, got {n_samples}")
    base = derive_seed(rng)
    runner = JobRunner(threads=threads, name="samples")
    outcomes = runner.run([
        (f"sample-{s}", lambda s=s: sample_graph(params, substream(base, "sample", s)))
        for s in range(n_samples)
    ])
    return raise_first_failure(outcomes)
