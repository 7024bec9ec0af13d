from jointdyad.evaluation.community import cosine_similarity, overlapping_modularity
from jointdyad.evaluation.prediction import (
    auc,
    joint_classify,
    losses,
    prediction_report,
)
from jointdyad.evaluation.reports import (
    CommunityRecoveryReport,
    JointClassificationReport,
    ModularityReport,
    PredictionReport,
    SampleComparison,
)
from jointdyad.evaluation.samples import compare_graphs, compare_samples

__all__ = [
    "CommunityRecoveryReport",
    "JointClassificationReport",
    "ModularityReport",
    "PredictionReport",
    "SampleComparison",
    "auc",
    "compare_graphs",
    "compare_samples",
    "cosine_similarity",
    "joint_classify",
    "losses",
    "overlapping_modularity",
    "prediction_report",
]
