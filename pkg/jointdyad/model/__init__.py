from jointdyad.model.dyad import (
    DyadDistribution,
    DyadMoments,
    conditional_mean,
    dyad_distribution,
    dyad_moments,
    lambda_rate,
    marginal_mean,
    natural_parameters,
)
from jointdyad.model.likelihood import eta_gradient, log_likelihood
from jointdyad.model.params import ModelParams, load_params, save_params

__all__ = [
    "DyadDistribution",
    "DyadMoments",
    "ModelParams",
    "conditional_mean",
    "dyad_distribution",
    "dyad_moments",
    "eta_gradient",
    "lambda_rate",
    "load_params",
    "log_likelihood",
    "marginal_mean",
    "natural_parameters",
    "save_params",
]
