"""
Edge-prediction metrics and joint-label classification.
"""

from typing import Optional, Sequence, Tuple

import numpy as np
import structlog
from sklearn.metrics import confusion_matrix, log_loss, mean_absolute_error, roc_auc_score

from jointdyad.evaluation.reports import JointClassificationReport, PredictionReport, ScoreKind
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.model.dyad import DYAD_STATES, joint_probabilities, lambda_matrix
from jointdyad.model.likelihood import check_dimensions
from jointdyad.model.params import ModelParams
from jointdyad.utils.exceptions import EvaluationError, ValidationError


logger = structlog.get_logger(__name__)

PROBABILITY_CLIP = 1e-12
ALL_LABELS = list(range(len(DYAD_STATES)))
NONEMPTY_LABELS = ALL_LABELS[1:]


def _as_vectors(scores, labels) -> Tuple[np.ndarray, np.ndarray]:
    scores = np.asarray(scores, dtype=float).ravel()
    labels = np.asarray(labels).ravel()
    if scores.shape != labels.shape:
        raise ValidationError(
            f"scores and labels differ in length: {scores.size} vs {labels.size}"
        )
    if scores.size == 0:
        raise EvaluationError("no entries to evaluate")
    if not np.all(np.isin(labels, (0, 1))):
        raise ValidationError("labels must be 0 or 1")
    return scores, labels.astype(int)


def auc(scores: Sequence[float], labels: Sequence[int]) -> Optional[float]:
    """
    Probability that a random positive outranks a random negative (ties 0.5).

    Returns None when only one class is present.
    """
    scores, labels = _as_vectors(scores, labels)
    if np.unique(labels).size < 2:
        return None
    return float(roc_auc_score(labels, scores))


def losses(probabilities: Sequence[float], labels: Sequence[int]) -> Tuple[float, float]:
    """
    Log loss and L1 loss averaged over the evaluated entries.

    Probabilities are clipped to [1e-12, 1 - 1e-12] for both.
    """
    probabilities, labels = _as_vectors(probabilities, labels)
    if np.any((probabilities < 0) | (probabilities > 1)):
        raise ValidationError("probabilities must lie in [0, 1]")
    clipped = np.clip(probabilities, PROBABILITY_CLIP, 1.0 - PROBABILITY_CLIP)
    return (
        float(log_loss(labels, clipped, labels=[0, 1])),
        float(mean_absolute_error(labels, clipped)),
    )


def prediction_report(
    scores: Sequence[float],
    labels: Sequence[int],
    score_kind: ScoreKind
) -> PredictionReport:
    """AUC and losses of one score vector against binary labels."""
    value = auc(scores, labels)
    if value is None:
        logger.info("auc_undefined", score_kind=score_kind, entries=len(labels))
    log_value, l1_value = losses(scores, labels)
    return PredictionReport(
        score_kind=score_kind,
        auc=value,
        log_loss=log_value,
        l1_loss=l1_value,
        n_entries=len(labels),
        clip=PROBABILITY_CLIP,
    )


def dyad_labels(g: DirectedBinaryGraph, dyad_i: np.ndarray, dyad_j: np.ndarray) -> np.ndarray:
    """Joint label index 2 A_ij + A_ji of each dyad."""
    A = g.dense
    return (2 * A[dyad_i, dyad_j] + A[dyad_j, dyad_i]).astype(int)


def predict_labels(
    params: ModelParams,
    dyad_i: np.ndarray,
    dyad_j: np.ndarray,
    exclude_empty: bool = False
) -> np.ndarray:
    """Argmax cell of each dyad, over 01/10/11 only when ``exclude_empty``."""
    lam = lambda_matrix(params)
    probs = joint_probabilities(lam[dyad_i, dyad_j], lam[dyad_j, dyad_i], params.eta)
    if exclude_empty:
        return 1 + np.argmax(probs[:, 1:], axis=1)
    return np.argmax(probs, axis=1)


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> list:
    out = np.zeros(numerator.shape, dtype=float)
    np.divide(numerator, denominator, out=out, where=denominator > 0)
    return out.tolist()


def joint_classify(
    g_true: DirectedBinaryGraph,
    params: ModelParams,
    dyad_i: np.ndarray,
    dyad_j: np.ndarray,
    exclude_empty: bool = False,
    train_i: Optional[np.ndarray] = None,
    train_j: Optional[np.ndarray] = None
) -> JointClassificationReport:
    """
    Classify dyads by their most probable joint label.

    Args:
        g_true: Graph holding the true labels
        params: Fitted parameters
        dyad_i, dyad_j: Evaluated dyads (i < j)
        exclude_empty: Drop true-00 dyads and predict among 01/10/11 only
        train_i, train_j: Training dyads for the MRF baseline (defaults to the evaluated ones)

    Returns:
        JointClassificationReport with the RP and MRF baselines

    Raises:
        EvaluationError: If no dyad remains to evaluate
    """
    check_dimensions(g_true, params)
    dyad_i = np.asarray(dyad_i, dtype=int)
    dyad_j = np.asarray(dyad_j, dtype=int)

    truth = dyad_labels(g_true, dyad_i, dyad_j)
    admissible = NONEMPTY_LABELS if exclude_empty else ALL_LABELS
    if exclude_empty:
        keep = truth != 0
        dyad_i, dyad_j, truth = dyad_i[keep], dyad_j[keep], truth[keep]
    if truth.size == 0:
        raise EvaluationError("no dyads to classify")

    predicted = predict_labels(params, dyad_i, dyad_j, exclude_empty)
    confusion = confusion_matrix(predicted, truth, labels=ALL_LABELS)
    correct = np.diag(confusion)

    if train_i is None or train_j is None:
        train_labels = truth
    else:
        train_labels = dyad_labels(g_true, np.asarray(train_i, dtype=int), np.asarray(train_j, dtype=int))
        train_labels = train_labels[np.isin(train_labels, admissible)]
    counts = np.bincount(train_labels, minlength=len(ALL_LABELS))[admissible]
    most_frequent = admissible[int(np.argmax(counts))]

    return JointClassificationReport(
        exclude_empty=exclude_empty,
        n_dyads=int(truth.size),
        accuracy=float(correct.sum() / truth.size),
        confusion=confusion.astype(int).tolist(),
        precision=_ratio(correct, confusion.sum(axis=1)),
        recall=_ratio(correct, confusion.sum(axis=0)),
        baselines={
            "rp": 1.0 / len(admissible),
            "mrf": float(np.mean(truth == most_frequent)),
        },
    )
