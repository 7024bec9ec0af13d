"""
Masked training and held-out scoring.
"""

from typing import Optional, Sequence

import numpy as np
import structlog

from jointdyad.config import settings
from jointdyad.crossval.mask import DyadMask, make_mask
from jointdyad.crossval.types import CVReport, CVSweepReport, FoldResult
from jointdyad.evaluation.prediction import joint_classify, prediction_report
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.inference.fit import fit
from jointdyad.inference.types import FitConfig
from jointdyad.model.dyad import conditional_mean_matrix, lambda_matrix, marginal_mean_matrix
from jointdyad.model.params import ModelParams
from jointdyad.utils.exceptions import EvaluationError, ValidationError
from jointdyad.utils.random import derive_seed, substream
from jointdyad.workflow.runner import JobRunner, raise_first_failure


logger = structlog.get_logger(__name__)


def held_out_entries(test_i: np.ndarray, test_j: np.ndarray):
    """Both ordered entries of every held-out dyad."""
    return np.concatenate([test_i, test_j]), np.concatenate([test_j, test_i])


def score_fold(
    g: DirectedBinaryGraph,
    params: ModelParams,
    mask: DyadMask,
    fold: int,
    final_loglik: float = float("nan")
) -> FoldResult:
    """
    Score the held-out dyads of ``fold`` with marginal, conditional and
    joint-label predictors.

    The conditional score of (i, j) conditions on the observed A_ji.
    """
    test_i, test_j = mask.test_dyads(fold)
    train_i, train_j = mask.train_dyads(fold)
    rows, cols = held_out_entries(test_i, test_j)

    A = g.dense
    lam = lambda_matrix(params)
    labels = A[rows, cols].astype(int)
    marginal = prediction_report(marginal_mean_matrix(lam, params.eta)[rows, cols], labels, "marginal")
    conditional = prediction_report(
        conditional_mean_matrix(lam, params.eta, A)[rows, cols], labels, "conditional"
    )
    if marginal.auc is None:
        logger.info("fold_auc_undefined", fold=fold, entries=int(labels.size))

    try:
        joint = joint_classify(
            g, params, test_i, test_j, exclude_empty=True, train_i=train_i, train_j=train_j
        )
    except EvaluationError:
        logger.info("fold_without_edges", fold=fold)
        joint = None
    joint_full = joint_classify(
        g, params, test_i, test_j, exclude_empty=False, train_i=train_i, train_j=train_j
    )

    return FoldResult(
        fold=fold,
        n_test_dyads=int(test_i.size),
        final_loglik=final_loglik,
        marginal=marginal,
        conditional=conditional,
        joint=joint,
        joint_full=joint_full,
    )


def fold_config(fit_config: FitConfig, seed: int, fold: int) -> FitConfig:
    """Fit policy of ``fold`` with its own restart seed."""
    return fit_config.model_copy(update={"seed": derive_seed(substream(seed, "fold", fold))})


def run_cv(
    g: DirectedBinaryGraph,
    fit_config: FitConfig,
    n_folds: int = 5,
    seed: int = 0,
    threads: Optional[int] = None
) -> CVReport:
    """
    k-fold cross-validation with symmetric dyad masks.

    Fold f is fitted with every fold-f entry excluded from the E-step,
    M-step and log-likelihood, then scored on those entries.

    Args:
        g: Observed graph
        fit_config: EM policy (``seed`` is replaced per fold)
        n_folds: Number of folds
        seed: Seed of the mask and of the per-fold fits
        threads: Worker cap

    Returns:
        CVReport with aggregates filled in
    """
    if g.n_edges == 0:
        raise ValidationError("cross-validation needs a graph with edges")

    mask = make_mask(g.n_nodes, n_folds, seed)
    workers = settings.runtime.resolve_threads(threads)
    inner_threads = 1 if workers > 1 else workers

    def run_fold(fold: int) -> FoldResult:
        config = fold_config(fit_config, seed, fold)
        result = fit(g, config, mask=mask.train_matrix(fold), threads=inner_threads)
        scored = score_fold(g, result.params, mask, fold, final_loglik=result.final_loglik)
        logger.info(
            "fold_completed",
            fold=fold,
            k=fit_config.k,
            marginal_auc=scored.marginal.auc,
            conditional_auc=scored.conditional.auc,
        )
        return scored

    runner = JobRunner(threads=workers, name="folds")
    folds = raise_first_failure(runner.run([
        (f"fold-{fold}", lambda fold=fold: run_fold(fold)) for fold in range(n_folds)
    ]))

    return CVReport(k=fit_config.k, n_folds=n_folds, seed=seed, folds=folds).summarize()


def run_cv_sweep(
    g: DirectedBinaryGraph,
    k_values: Sequence[int],
    fit_config: FitConfig,
    n_folds: int = 5,
    seed: int = 0,
    threads: Optional[int] = None
) -> CVSweepReport:
    """
    Cross-validate every K in ``k_values`` on the same mask and pick the
    one with the largest mean marginal AUC (ties go to the smaller K).
    """
    if not k_values:
        raise ValidationError("k_values must not be empty")

    reports = [
        run_cv(g, fit_config.model_copy(update={"k": int(k)}), n_folds, seed, threads)
        for k in sorted(set(k_values))
    ]

    scored = [
        (report.aggregate("marginal", "auc").mean, -report.k)
        for report in reports
        if report.aggregate("marginal", "auc") is not None
    ]
    if not scored:
        raise EvaluationError("marginal AUC is undefined in every fold for every K")
    selected_k = -max(scored)[1]

    logger.info("k_selected", k=selected_k, candidates=[r.k for r in reports])
    return CVSweepReport(reports=reports, selected_k=selected_k)
