from jointdyad.crossval.mask import DyadMask, make_mask
from jointdyad.crossval.run import run_cv, run_cv_sweep, score_fold
from jointdyad.crossval.types import CVReport, CVSweepReport, FoldResult, MetricSummary

__all__ = [
    "CVReport",
    "CVSweepReport",
    "DyadMask",
    "FoldResult",
    "MetricSummary",
    "make_mask",
    "run_cv",
    "run_cv_sweep",
    "score_fold",
]
