"""
E-step, M-step and initialization of the joint-dyad EM.

The M-step updates the blocks in the order u, v, w, η. Each block sees
the freshest values of the blocks before it (λ is recomputed between
blocks) while the denominators of u, v and w keep the incoming η. The
η update evaluates its fixed-point equation once with the incoming η
on the right-hand side.

Masks are symmetric boolean N x N matrices of training dyads; masked
dyads are excluded from every numerator and denominator.
"""

from typing import Optional

import numpy as np
import structlog

from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.inference.types import FitConfig, Responsibilities
from jointdyad.model.params import ModelParams
from jointdyad.utils.exceptions import NumericalDegeneracyError


logger = structlog.get_logger(__name__)


def training_matrix(n_nodes: int, mask: Optional[np.ndarray] = None) -> np.ndarray:
    """Float 0/1 matrix of ordered pairs that enter the sums (diagonal excluded)."""
    if mask is None:
        train = np.ones((n_nodes, n_nodes))
    else:
        train = np.asarray(mask, dtype=float).copy()
    np.fill_diagonal(train, 0.0)
    return train


def observed_edges(g: DirectedBinaryGraph, mask: Optional[np.ndarray] = None):
    """Edge endpoints restricted to training dyads."""
    src, dst = g.sources, g.targets
    if mask is not None:
        keep = np.asarray(mask, dtype=bool)[src, dst]
        src, dst = src[keep], dst[keep]
    return src, dst


def initialize(config: FitConfig, n_nodes: int, rng: np.random.Generator) -> ModelParams:
    """
    Random starting point.

    u, v ~ U(0, init_scale); w has U(0, init_scale) on the diagonal and
    0.1 x U(0, init_scale) off it (zero when assortative); η ~ U(0.5, 5)
    unless pinned.
    """
    k, scale = config.k, config.init_scale
    u = rng.uniform(0.0, scale, size=(n_nodes, k))
    v = rng.uniform(0.0, scale, size=(n_nodes, k))
    off_diagonal = 0.1 * rng.uniform(0.0, scale, size=(k, k))
    w = np.diag(rng.uniform(0.0, scale, size=k))
    if not config.assortative:
        w = w + off_diagonal * (1.0 - np.eye(k))
    eta = rng.uniform(0.5, 5.0)
    if config.eta_fixed is not None:
        eta = config.eta_fixed
    return ModelParams.create(u=u, v=v, w=w, eta=eta)


def e_step(
    g: DirectedBinaryGraph,
    params: ModelParams,
    mask: Optional[np.ndarray] = None
) -> Responsibilities:
    """
    ρ_ijkq = u_ik v_jq w_kq / λ_ij for every observed training edge.

    Raises:
        NumericalDegeneracyError: If an observed edge has λ_ij = 0
    """
    src, dst = observed_edges(g, mask)
    weights = params.u[src][:, :, None] * params.w[None, :, :] * params.v[dst][:, None, :]
    lam = weights.sum(axis=(1, 2))

    degenerate = np.flatnonzero(lam <= 0)
    if degenerate.size:
        e = int(degenerate[0])
        edge = (int(src[e]), int(dst[e]))
        raise NumericalDegeneracyError(
            f"observed edge {edge} has zero rate under the current parameters",
            edge=edge,
        )

    return Responsibilities(
        sources=src,
        targets=dst,
        rho=weights / lam[:, None, None],
    )


def _divide_or_zero(numerator: np.ndarray, denominator: np.ndarray, block: str) -> np.ndarray:
    """Entry-wise ratio; zero-denominator entries become 0."""
    zero = denominator <= 0
    if np.any(zero):
        logger.debug("membership_detached", block=block, entries=int(zero.sum()))
    out = np.zeros_like(numerator)
    np.divide(numerator, denominator, out=out, where=~zero)
    return out


def _normalizer(lam: np.ndarray, eta: float) -> np.ndarray:
    return lam + lam.T + eta * lam * lam.T + 1.0


def m_step(
    g: DirectedBinaryGraph,
    params: ModelParams,
    rho: Responsibilities,
    mask: Optional[np.ndarray] = None,
    eta_fixed: Optional[float] = None,
    eta_floor: float = 1e-12
) -> ModelParams:
    """
    Closed-form updates of u, v, w and η given the responsibilities.

    Args:
        g: Observed graph
        params: Parameters of the E-step that produced ``rho``
        rho: Responsibilities of the training edges
        mask: Training dyads
        eta_fixed: Keep η at this value instead of updating it
        eta_floor: Lower clamp for the η update

    Returns:
        Updated parameters
    """
    n, k = params.u.shape
    eta0 = params.eta
    train = training_matrix(n, mask)
    u, v, w = params.u.copy(), params.v.copy(), params.w.copy()
    src, dst, weights = rho.sources, rho.targets, rho.rho

    # u: Σ_j train_ij (1 + η λ_ji) / Z_ij · Σ_q v_jq w_kq
    lam = u @ w @ v.T
    d = train * (1.0 + eta0 * lam.T) / _normalizer(lam, eta0)
    num_u = np.zeros((n, k))
    np.add.at(num_u, src, weights.sum(axis=2))
    u = _divide_or_zero(num_u, d @ (v @ w.T), "u")

    # v: Σ_j train_ij (1 + η λ_ij) / Z_ij · Σ_q u_jq w_qk
    lam = u @ w @ v.T
    e = train * (1.0 + eta0 * lam) / _normalizer(lam, eta0)
    num_v = np.zeros((n, k))
    np.add.at(num_v, dst, weights.sum(axis=1))
    v = _divide_or_zero(num_v, e @ (u @ w), "v")

    # w: Σ_ij train_ij u_ik v_jq (1 + η λ_ji) / Z_ij
    lam = u @ w @ v.T
    d = train * (1.0 + eta0 * lam.T) / _normalizer(lam, eta0)
    w = _divide_or_zero(weights.sum(axis=0), u.T @ d @ v, "w")

    if eta_fixed is not None:
        eta = float(eta_fixed)
    else:
        lam = u @ w @ v.T
        A = g.dense
        mutual = float(np.sum(train * A * A.T))
        denominator = float(np.sum(train * lam * lam.T / _normalizer(lam, eta0)))
        eta = mutual / denominator if denominator > 0 else 0.0
        if eta < eta_floor:
            logger.debug("eta_clamped", proposed=eta, floor=eta_floor)
            eta = eta_floor

    return ModelParams.create(u=u, v=v, w=w, eta=eta, node_labels=params.node_labels)
