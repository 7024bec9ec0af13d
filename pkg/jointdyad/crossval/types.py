"""
Cross-validation reports.
"""

from typing import List, Optional

import pandas as pd
from pydantic import BaseModel

from jointdyad.evaluation.reports import JointClassificationReport, PredictionReport


class FoldResult(BaseModel):
    """Scores of one held-out fold"""
    fold: int
    n_test_dyads: int
    final_loglik: float
    marginal: PredictionReport
    conditional: PredictionReport
    # None when the fold holds no non-empty dyad
    joint: Optional[JointClassificationReport] = None
    joint_full: JointClassificationReport


class MetricSummary(BaseModel):
    score_kind: str
    metric: str
    mean: float
    std: float
    n_folds: int


class CVReport(BaseModel):
    """Per-fold results and their mean/std across folds"""
    k: int
    n_folds: int
    seed: int
    folds: List[FoldResult]
    aggregates: List[MetricSummary] = []

    def to_frame(self) -> pd.DataFrame:
        """Flat (fold, score_kind, metric, value) table; undefined values are skipped."""
        rows = []
        for fold in self.folds:
            for kind in ("marginal", "conditional"):
                report: PredictionReport = getattr(fold, kind)
                for metric in ("auc", "log_loss", "l1_loss"):
                    value = getattr(report, metric)
                    if value is not None:
                        rows.append((fold.fold, kind, metric, value))
            for kind in ("joint", "joint_full"):
                report = getattr(fold, kind)
                if report is None:
                    continue
                rows.append((fold.fold, kind, "accuracy", report.accuracy))
                rows.append((fold.fold, kind, "baseline_rp", report.baselines["rp"]))
                rows.append((fold.fold, kind, "baseline_mrf", report.baselines["mrf"]))
        return pd.DataFrame(rows, columns=["fold", "score_kind", "metric", "value"])

    def summarize(self) -> "CVReport":
        """Copy with ``aggregates`` recomputed from the folds."""
        frame = self.to_frame()
        grouped = frame.groupby(["score_kind", "metric"], sort=True)["value"]
        summary = grouped.agg(mean="mean", std=lambda v: v.std(ddof=0), n_folds="count")
        aggregates = [
            MetricSummary(
                score_kind=kind,
                metric=metric,
                mean=float(row["mean"]),
                std=float(row["std"]),
                n_folds=int(row["n_folds"]),
            )
            for (kind, metric), row in summary.iterrows()
        ]
        return self.model_copy(update={"aggregates": aggregates})

    def aggregate(self, score_kind: str, metric: str) -> Optional[MetricSummary]:
        for summary in self.aggregates:
            if summary.score_kind == score_kind and summary.metric == metric:
                return summary
        return None


class CVSweepReport(BaseModel):
    """Cross-validation over several K with the selected one"""
    reports: List[CVReport]
    selected_k: int
    selection_metric: str = "marginal.auc"

    def to_frame(self) -> pd.DataFrame:
        frames = [report.to_frame().assign(k=report.k) for report in self.reports]
        frame = pd.concat(frames, ignore_index=True)
        return frame[["k", "fold", "score_kind", "metric", "value"]]
