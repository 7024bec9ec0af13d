"""
Restart-driven EM fit.
"""

from typing import List, Optional

import numpy as np
import structlog

from jointdyad.config import settings
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.inference.em import e_step, initialize, m_step, observed_edges
from jointdyad.inference.types import FitConfig, FitResult
from jointdyad.model.dyad import lambda_matrix
from jointdyad.model.likelihood import log_likelihood_from_rates
from jointdyad.utils.exceptions import FitError, ValidationError
from jointdyad.utils.random import substream
from jointdyad.workflow.runner import JobRunner


logger = structlog.get_logger(__name__)

# Allowed per-iteration drop of L before it counts as a violation
MONOTONICITY_SLACK = 1e-8


def fit_single(
    g: DirectedBinaryGraph,
    config: FitConfig,
    restart_index: int = 0,
    mask: Optional[np.ndarray] = None
) -> FitResult:
    """
    One EM run from the initialization of ``restart_index``.

    Convergence is declared when L moved by less than ``tol`` over the
    last ``check_every`` iterations.
    """
    rng = substream(config.seed, "restart", restart_index)
    A = g.dense
    params = initialize(config, g.n_nodes, rng)
    if g.node_labels is not None:
        params = params.replace(node_labels=list(g.node_labels))

    loglik = log_likelihood_from_rates(A, lambda_matrix(params), params.eta, mask)
    trace: List[float] = [loglik]
    checkpoint = loglik
    converged = False
    violations = 0
    iteration = 0

    for iteration in range(1, config.max_iter + 1):
        rho = e_step(g, params, mask)
        params = m_step(
            g,
            params,
            rho,
            mask=mask,
            eta_fixed=config.eta_fixed,
            eta_floor=config.eta_floor,
        )
        new_loglik = log_likelihood_from_rates(A, lambda_matrix(params), params.eta, mask)

        if new_loglik < loglik - MONOTONICITY_SLACK:
            violations += 1
            logger.debug(
                "loglik_decreased",
                restart=restart_index,
                iteration=iteration,
                drop=loglik - new_loglik,
            )

        loglik = new_loglik
        trace.append(loglik)

        if iteration % config.check_every == 0:
            if abs(loglik - checkpoint) < config.tol:
                converged = True
                break
            checkpoint = loglik

    logger.debug(
        "restart_completed",
        restart=restart_index,
        iterations=iteration,
        final_loglik=loglik,
        converged=converged,
        eta=params.eta,
    )

    return FitResult(
        params=params,
        final_loglik=loglik,
        loglik_trace=trace,
        iterations=iteration,
        restart_index=restart_index,
        converged=converged,
        monotonicity_violations=violations,
        config=config,
    )


def fit(
    g: DirectedBinaryGraph,
    config: FitConfig,
    mask: Optional[np.ndarray] = None,
    threads: Optional[int] = None
) -> FitResult:
    """
    Fit the model with ``config.n_restarts`` random initializations.

    Args:
        g: Observed graph
        config: EM policy
        mask: Symmetric boolean matrix of training dyads (None = all)
        threads: Worker cap for restarts

    Returns:
        The restart with the largest final log-likelihood

    Raises:
        ValidationError: If no edge lies inside the training dyads
        FitError: If every restart is numerically degenerate
    """
    src, _ = observed_edges(g, mask)
    if src.size == 0:
        raise ValidationError("graph has no edges inside the training mask")

    runner = JobRunner(threads=settings.runtime.resolve_threads(threads), name="restarts")
    outcomes = runner.run([
        (f"restart-{r}", lambda r=r: fit_single(g, config, restart_index=r, mask=mask))
        for r in range(config.n_restarts)
    ])

    results = [outcome.result for outcome in outcomes if outcome.ok]
    if not results:
        errors = "; ".join(outcome.job.error or "" for outcome in outcomes)
        raise FitError(f"all {config.n_restarts} restarts failed: {errors}")

    best = max(results, key=lambda result: (result.final_loglik, -result.restart_index))

    logger.info(
        "fit_completed",
        k=config.k,
        restarts=config.n_restarts,
        failed_restarts=len(outcomes) - len(results),
        best_restart=best.restart_index,
        final_loglik=best.final_loglik,
        eta=best.params.eta,
        converged=best.converged,
    )
    return best
