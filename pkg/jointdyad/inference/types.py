"""
Configuration and result types of the EM fit.
"""

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from jointdyad.config import settings
from jointdyad.model.params import ModelParams, ModelParamsDocument


class FitConfig(BaseModel):
    """EM policy; defaults come from ``settings.fit``"""
    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=1)
    max_iter: int = Field(default_factory=lambda: settings.fit.max_iter, ge=1)
    tol: float = Field(default_factory=lambda: settings.fit.tol, gt=0)
    check_every: int = Field(default_factory=lambda: settings.fit.check_every, ge=1)
    n_restarts: int = Field(default_factory=lambda: settings.fit.n_restarts, ge=1)
    seed: int = 0
    eta_fixed: Optional[float] = Field(default=None, gt=0)
    init_scale: float = Field(default_factory=lambda: settings.fit.init_scale, gt=0)
    eta_floor: float = Field(default_factory=lambda: settings.fit.eta_floor, gt=0)
    # Diagonal affinity matrix
    assortative: bool = False


class Responsibilities(BaseModel):
    """
    Variational weights ρ_ijkq for the observed, unmasked edges.

    ``rho[e]`` is the K x K matrix of edge (sources[e], targets[e]).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sources: np.ndarray
    targets: np.ndarray
    rho: np.ndarray

    @property
    def n_edges(self) -> int:
        return int(self.sources.size)


class FitReport(BaseModel):
    """JSON form of a FitResult"""
    final_loglik: float
    iterations: int
    restart_index: int
    converged: bool
    monotonicity_violations: int
    loglik_trace: List[float]
    config: FitConfig
    params: ModelParamsDocument


class FitResult(BaseModel):
    """Best run of a fit"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    params: ModelParams
    final_loglik: float
    loglik_trace: List[float]
    iterations: int
    restart_index: int
    converged: bool
    monotonicity_violations: int = 0
    config: Optional[FitConfig] = None

    def to_report(self) -> FitReport:
        return FitReport(
            final_loglik=self.final_loglik,
            iterations=self.iterations,
            restart_index=self.restart_index,
            converged=self.converged,
            monotonicity_violations=self.monotonicity_violations,
            loglik_trace=self.loglik_trace,
            config=self.config,
            params=self.params.to_document(),
        )
