from jointdyad.inference.em import e_step, initialize, m_step
from jointdyad.inference.fit import fit, fit_single
from jointdyad.inference.types import FitConfig, FitReport, FitResult, Responsibilities

__all__ = [
    "FitConfig",
    "FitReport",
    "FitResult",
    "Responsibilities",
    "e_step",
    "fit",
    "fit_single",
    "initialize",
    "m_step",
]
