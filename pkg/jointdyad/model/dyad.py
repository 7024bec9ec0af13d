"""
Bivariate Bernoulli distribution of one dyad (A_ij, A_ji).

With rates λ_ij, λ_ji and pair-interaction η the four cells are

    (p00, p01, p10, p11) = (1, λ_ji, λ_ij, η λ_ij λ_ji) / Z,
    Z = λ_ij + λ_ji + η λ_ij λ_ji + 1.

Cell order is fixed as 00, 01, 10, 11 where the first digit is A_ij and
the second A_ji. Scalar helpers serve callers working on single dyads;
the ``*_matrix`` forms work on whole N x N rate matrices.
"""

from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import logsumexp

from jointdyad.model.params import ModelParams
from jointdyad.utils.validation import ensure_finite


# Cell labels in sampling / argmax order
DYAD_STATES: Tuple[Tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))
STATE_NAMES: Tuple[str, ...] = ("00", "01", "10", "11")


class DyadDistribution(BaseModel):
    """Cell probabilities of one unordered dyad and their normalizer"""
    model_config = ConfigDict(frozen=True)

    p00: float
    p01: float
    p10: float
    p11: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p00, self.p01, self.p10, self.p11])

    def probability(self, a_ij: int, a_ji: int) -> float:
        return float(self.as_array()[2 * a_ij + a_ji])


class DyadMoments(BaseModel):
    """Means, variances and covariance of (A_ij, A_ji)"""
    model_config = ConfigDict(frozen=True)

    mean_ij: float
    mean_ji: float
    var_ij: float
    var_ji: float
    cov: float


def lambda_rate(params: ModelParams, i: int, j: int) -> float:
    """λ_ij = Σ_{k,q} u_ik v_jq w_kq."""
    return float(params.u[i] @ params.w @ params.v[j])


def dyad_distribution(lambda_ij: float, lambda_ji: float, eta: float) -> DyadDistribution:
    """
    Joint pmf of (A_ij, A_ji).

    Raises:
        ValidationError: If any input is not finite
    """
    ensure_finite("dyad inputs", lambda_ij, lambda_ji, eta)
    joint = eta * lambda_ij * lambda_ji
    z = lambda_ij + lambda_ji + joint + 1.0

    if np.isfinite(z):
        return DyadDistribution(
            p00=1.0 / z,
            p01=lambda_ji / z,
            p10=lambda_ij / z,
            p11=joint / z,
            z=z,
        )

    # Z overflowed: normalize the cells in log space
    with np.errstate(divide="ignore"):
        log_cells = np.array([
            0.0,
            np.log(lambda_ji),
            np.log(lambda_ij),
            np.log(eta) + np.log(lambda_ij) + np.log(lambda_ji),
        ])
    log_z = logsumexp(log_cells)
    p = np.exp(log_cells - log_z)
    return DyadDistribution(
        p00=float(p[0]),
        p01=float(p[1]),
        p10=float(p[2]),
        p11=float(p[3]),
        z=float(np.exp(log_z)),
    )


def marginal_mean(lambda_ij: float, lambda_ji: float, eta: float) -> float:
    """E[A_ij] = (λ_ij + η λ_ij λ_ji) / Z."""
    d = dyad_distribution(lambda_ij, lambda_ji, eta)
    return d.p10 + d.p11


def conditional_mean(lambda_ij: float, eta: float, a_ji: int) -> float:
    """E[A_ij | A_ji = a_ji] = η^a λ_ij / (η^a λ_ij + 1)."""
    ensure_finite("dyad inputs", lambda_ij, eta)
    boosted = (eta if a_ji else 1.0) * lambda_ij
    return boosted / (boosted + 1.0)


def dyad_moments(lambda_ij: float, lambda_ji: float, eta: float) -> DyadMoments:
    """Closed-form means, variances and covariance of one dyad."""
    d = dyad_distribution(lambda_ij, lambda_ji, eta)
    mean_ij = d.p10 + d.p11
    mean_ji = d.p01 + d.p11

    if not np.isfinite(d.z):
        return DyadMoments(
            mean_ij=mean_ij,
            mean_ji=mean_ji,
            var_ij=mean_ij * (d.p00 + d.p01),
            var_ji=mean_ji * (d.p00 + d.p10),
            cov=d.p11 * d.p00 - d.p10 * d.p01,
        )

    z = d.z
    return DyadMoments(
        mean_ij=mean_ij,
        mean_ji=mean_ji,
        var_ij=(lambda_ij * (1.0 + eta * lambda_ji) / z) * ((1.0 + lambda_ji) / z),
        var_ji=(lambda_ji * (1.0 + eta * lambda_ij) / z) * ((1.0 + lambda_ij) / z),
        cov=(eta - 1.0) * lambda_ij * lambda_ji / z**2,
    )


def natural_parameters(lambda_ij: float, lambda_ji: float, eta: float) -> Tuple[float, float, float]:
    """Log-odds coordinates (f_ij, f_ji, J) = (log λ_ij, log λ_ji, log η)."""
    ensure_finite("dyad inputs", lambda_ij, lambda_ji, eta)
    with np.errstate(divide="ignore"):
        return (
            float(np.log(lambda_ij)),
            float(np.log(lambda_ji)),
            float(np.log(eta)),
        )


# --- matrix forms -----------------------------------------------------------

def lambda_matrix(params: ModelParams) -> np.ndarray:
    """Rates λ_ij for all ordered pairs; the diagonal is zeroed."""
    lam = params.u @ params.w @ params.v.T
    np.fill_diagonal(lam, 0.0)
    return lam


def normalizer_matrix(lam: np.ndarray, eta: float) -> np.ndarray:
    """Symmetric matrix of Z_(ij)."""
    return lam + lam.T + eta * lam * lam.T + 1.0


def marginal_mean_matrix(lam: np.ndarray, eta: float) -> np.ndarray:
    """E[A_ij] for every ordered pair (diagonal zero)."""
    with np.errstate(over="ignore", invalid="ignore"):
        z = normalizer_matrix(lam, eta)
        means = (lam + eta * lam * lam.T) / z
    overflow = ~np.isfinite(z)
    if overflow.any():
        probs = joint_probabilities(lam[overflow], lam.T[overflow], eta)
        means[overflow] = probs[:, 2] + probs[:, 3]
    np.fill_diagonal(means, 0.0)
    return means


def conditional_mean_matrix(lam: np.ndarray, eta: float, A: np.ndarray) -> np.ndarray:
    """E[A_ij | A_ji] using the observed opposite entries of ``A``."""
    boosted = np.where(np.asarray(A).T > 0, eta, 1.0) * lam
    means = boosted / (boosted + 1.0)
    np.fill_diagonal(means, 0.0)
    return means


def joint_probabilities(lam_ij: np.ndarray, lam_ji: np.ndarray, eta: float) -> np.ndarray:
    """
    Cell probabilities (p00, p01, p10, p11) for aligned rate vectors, shape (n, 4).

    Rows whose normalizer overflows are normalized in log space.
    """
    lam_ij = np.asarray(lam_ij, dtype=float)
    lam_ji = np.asarray(lam_ji, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        cells = np.stack(
            [np.ones_like(lam_ij), lam_ji, lam_ij, eta * lam_ij * lam_ji],
            axis=-1,
        )
        total = cells.sum(axis=-1, keepdims=True)
        probs = cells / total

    overflow = ~np.isfinite(total[..., 0])
    if overflow.any():
        with np.errstate(divide="ignore"):
            log_ij = np.log(lam_ij[overflow])
            log_ji = np.log(lam_ji[overflow])
            log_cells = np.stack(
                [np.zeros_like(log_ij), log_ji, log_ij, np.log(eta) + log_ij + log_ji],
                axis=-1,
            )
        probs[overflow] = np.exp(log_cells - logsumexp(log_cells, axis=-1, keepdims=True))
    return probs
