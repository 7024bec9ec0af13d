"""
Full-data log-likelihood and its derivative in η.

The sum runs once over unordered dyads {i, j}, i < j, which is the
ordered-pair form with its 1/2 factors folded in:

    L = Σ_{i<j} [A_ij log λ_ij + A_ji log λ_ji + A_ij A_ji log η - log Z_(ij)]

A training mask, when given, is a symmetric boolean N x N matrix; only
dyads with ``mask[i, j]`` True contribute.
"""

from typing import Optional, Tuple

import numpy as np

from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.model.dyad import lambda_matrix
from jointdyad.model.params import ModelParams
from jointdyad.utils.exceptions import ValidationError


def dyad_index(n_nodes: int, mask: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Upper-triangle indices (i < j) of the dyads selected by ``mask``."""
    iu, ju = np.triu_indices(n_nodes, k=1)
    if mask is not None:
        keep = np.asarray(mask, dtype=bool)[iu, ju]
        iu, ju = iu[keep], ju[keep]
    return iu, ju


def check_dimensions(g: DirectedBinaryGraph, params: ModelParams) -> None:
    if params.n_nodes != g.n_nodes:
        raise ValidationError(
            f"parameters describe {params.n_nodes} nodes, graph has {g.n_nodes}"
        )


def log_likelihood_from_rates(
    A: np.ndarray,
    lam: np.ndarray,
    eta: float,
    mask: Optional[np.ndarray] = None
) -> float:
    """
    Log-likelihood given a precomputed rate matrix.

    Returns ``-inf`` when an observed edge has zero rate.
    """
    iu, ju = dyad_index(A.shape[0], mask)
    a_ij = A[iu, ju]
    a_ji = A[ju, iu]
    l_ij = lam[iu, ju]
    l_ji = lam[ju, iu]

    if np.any((a_ij > 0) & (l_ij <= 0)) or np.any((a_ji > 0) & (l_ji <= 0)):
        return float("-inf")

    z = l_ij + l_ji + eta * l_ij * l_ji + 1.0
    observed_ij = a_ij > 0
    observed_ji = a_ji > 0
    mutual = observed_ij & observed_ji

    total = (
        np.log(l_ij[observed_ij]).sum()
        + np.log(l_ji[observed_ji]).sum()
        + np.count_nonzero(mutual) * np.log(eta)
        - np.log(z).sum()
    )
    return float(total)


def log_likelihood(
    g: DirectedBinaryGraph,
    params: ModelParams,
    mask: Optional[np.ndarray] = None
) -> float:
    """
    Log-likelihood of ``g`` under ``params``.

    Args:
        g: Observed graph
        params: Model parameters, same node count as ``g``
        mask: Optional symmetric boolean matrix of dyads to include

    Returns:
        L, or ``-inf`` if some observed edge has λ_ij = 0
    """
    check_dimensions(g, params)
    return log_likelihood_from_rates(g.dense, lambda_matrix(params), params.eta, mask)


def eta_gradient_from_rates(
    A: np.ndarray,
    lam: np.ndarray,
    eta: float,
    mask: Optional[np.ndarray] = None
) -> float:
    iu, ju = dyad_index(A.shape[0], mask)
    l_ij = lam[iu, ju]
    l_ji = lam[ju, iu]
    mutual = np.count_nonzero((A[iu, ju] > 0) & (A[ju, iu] > 0))
    z = l_ij + l_ji + eta * l_ij * l_ji + 1.0
    return float(mutual / eta - np.sum(l_ij * l_ji / z))


def eta_gradient(
    g: DirectedBinaryGraph,
    params: ModelParams,
    mask: Optional[np.ndarray] = None
) -> float:
    """
    ∂L/∂η = (1/2η) Σ_{i,j} A_ij A_ji - 1/2 Σ_{i,j} λ_ij λ_ji / Z_(ij).

    Both sums run over ordered pairs; each unordered dyad is visited once
    here, which absorbs the 1/2 factors.
    """
    check_dimensions(g, params)
    return eta_gradient_from_rates(g.dense, lambda_matrix(params), params.eta, mask)
