"""
Report models emitted by the evaluation layer.
"""

from typing import Dict, List, Literal, Optional

import pandas as pd
from pydantic import BaseModel, Field

from jointdyad.graph.stats import GraphStats
from jointdyad.model.dyad import STATE_NAMES


ScoreKind = Literal["marginal", "conditional"]
Aggregation = Literal["mean", "max", "product"]


class CommunityRecoveryReport(BaseModel):
    """Cosine similarity between true and inferred memberships"""
    cosine_similarity: float = Field(ge=0, le=1)
    u_similarity: float = Field(ge=0, le=1)
    v_similarity: float = Field(ge=0, le=1)
    # permutation[k] = inferred column aligned to true community k
    permutation: List[int]
    alignment_method: Literal["exhaustive", "hungarian"]


class PredictionReport(BaseModel):
    """Edge-prediction quality of one score vector"""
    score_kind: ScoreKind
    auc: Optional[float] = Field(default=None, ge=0, le=1)
    log_loss: float = Field(ge=0)
    l1_loss: float = Field(ge=0, le=1)
    n_entries: int = Field(ge=1)
    clip: float = 1e-12


class JointClassificationReport(BaseModel):
    """
    Joint-label classification of dyads.

    ``confusion[p][t]`` counts dyads predicted as label p with true label t.
    Precision is row-normalized, recall column-normalized.
    """
    labels: List[str] = Field(default_factory=lambda: list(STATE_NAMES))
    exclude_empty: bool
    n_dyads: int = Field(ge=1)
    accuracy: float = Field(ge=0, le=1)
    confusion: List[List[int]]
    precision: List[float]
    recall: List[float]
    baselines: Dict[str, float]


class ModularityReport(BaseModel):
    """Overlapping modularity for one or more aggregation functions"""
    matrix: Literal["u", "v"]
    values: Dict[str, float]


class SampleComparison(BaseModel):
    """Statistics of an observed graph next to those of model samples"""
    observed: GraphStats
    samples: List[GraphStats]

    def to_frame(self) -> pd.DataFrame:
        """One row per statistic: observed, sample_mean, sample_std."""
        samples = pd.DataFrame([s.model_dump() for s in self.samples])
        observed = self.observed.model_dump()
        return pd.DataFrame({
            "statistic": list(observed),
            "observed": [float(observed[name]) for name in observed],
            "sample_mean": [float(samples[name].mean()) for name in observed],
            "sample_std": [float(samples[name].std(ddof=0)) for name in observed],
        })
