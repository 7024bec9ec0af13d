"""
Whole-network reconstruction from fitted parameters.
"""

from typing import List, Literal

import numpy as np
import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field

from jointdyad.evaluation.prediction import joint_classify, predict_labels, prediction_report
from jointdyad.evaluation.reports import JointClassificationReport, PredictionReport
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.model.dyad import STATE_NAMES, conditional_mean_matrix, lambda_matrix, marginal_mean_matrix
from jointdyad.model.likelihood import check_dimensions
from jointdyad.model.params import ModelParams
from jointdyad.utils.exceptions import ValidationError


logger = structlog.get_logger(__name__)

DEFAULT_THRESHOLD = 0.2
EXPORT_COLUMNS = ["source", "target", "marginal_score", "conditional_score", "joint_label"]


class ReconstructionReport(BaseModel):
    """
    Scores of every ordered off-diagonal entry and their losses.

    ``entries`` carries the per-entry scores and the dyad's predicted
    joint label (from the point of view of (source, target)); it is
    written as CSV rather than JSON.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    threshold: float = Field(ge=0, le=1)
    score_kind: Literal["marginal", "conditional"]
    marginal: PredictionReport
    conditional: PredictionReport
    joint: JointClassificationReport
    entries: pd.DataFrame = Field(exclude=True)

    def export_frame(self) -> pd.DataFrame:
        """Entries whose selected score exceeds the threshold."""
        column = f"{self.score_kind}_score"
        kept = self.entries[self.entries[column] > self.threshold]
        return kept[EXPORT_COLUMNS].reset_index(drop=True)

    def export_edges(self) -> List[tuple]:
        frame = self.export_frame()
        return list(zip(frame["source"].tolist(), frame["target"].tolist()))


def reconstruct(
    g: DirectedBinaryGraph,
    params: ModelParams,
    threshold: float = DEFAULT_THRESHOLD,
    score_kind: Literal["marginal", "conditional"] = "conditional"
) -> ReconstructionReport:
    """
    Score all N(N-1) ordered entries in marginal and conditional mode and
    classify every dyad among the four joint labels.

    Args:
        g: Observed graph
        params: Fitted parameters
        threshold: Export keeps entries scoring strictly above this
        score_kind: Score compared against the threshold

    Raises:
        ValidationError: If the graph has fewer than two nodes or the
            threshold is outside [0, 1]
    """
    check_dimensions(g, params)
    if g.n_nodes < 2:
        raise ValidationError(f"reconstruction needs at least two nodes, got {g.n_nodes}")
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError(f"threshold must lie in [0, 1], got {threshold}")

    n = g.n_nodes
    A = g.dense
    lam = lambda_matrix(params)
    rows, cols = np.nonzero(~np.eye(n, dtype=bool))
    labels = A[rows, cols].astype(int)
    marginal_scores = marginal_mean_matrix(lam, params.eta)[rows, cols]
    conditional_scores = conditional_mean_matrix(lam, params.eta, A)[rows, cols]

    iu, ju = np.triu_indices(n, k=1)
    joint = joint_classify(g, params, iu, ju, exclude_empty=False)

    # Label of the dyad seen from (i, j): swapping the endpoints swaps the digits
    predicted = np.zeros((n, n), dtype=int)
    dyad_label = predict_labels(params, iu, ju)
    predicted[iu, ju] = dyad_label
    predicted[ju, iu] = np.array([0, 2, 1, 3])[dyad_label]
    names = np.array(STATE_NAMES)
    node_names = np.array(g.labels())

    entries = pd.DataFrame({
        "source": node_names[rows],
        "target": node_names[cols],
        "marginal_score": marginal_scores,
        "conditional_score": conditional_scores,
        "joint_label": names[predicted[rows, cols]],
    })

    report = ReconstructionReport(
        threshold=threshold,
        score_kind=score_kind,
        marginal=prediction_report(marginal_scores, labels, "marginal"),
        conditional=prediction_report(conditional_scores, labels, "conditional"),
        joint=joint,
        entries=entries,
    )
    logger.info(
        "network_reconstructed",
        entries=int(labels.size),
        exported=int(len(report.export_frame())),
        marginal_log_loss=report.marginal.log_loss,
        conditional_log_loss=report.conditional.log_loss,
        joint_accuracy=joint.accuracy,
    )
    return report
