"""
Community-level metrics: membership recovery and overlapping modularity.
"""

from itertools import permutations
from typing import Callable, Dict

import numpy as np
import structlog
from scipy.optimize import linear_sum_assignment

from jointdyad.evaluation.reports import CommunityRecoveryReport
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.utils.exceptions import ValidationError


logger = structlog.get_logger(__name__)

# Largest K searched over all K! permutations
EXHAUSTIVE_MAX_K = 10

AGGREGATIONS: Dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "mean": lambda a, b: 0.5 * (a + b),
    "max": np.maximum,
    "product": np.multiply,
}


def _unit_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    out = np.zeros_like(matrix)
    np.divide(matrix, norms, out=out, where=norms > 0)
    return out


def _alignment_gain(true: np.ndarray, inferred: np.ndarray) -> np.ndarray:
    """G[k, l] = Σ_i cos contribution of true column k against inferred column l."""
    return _unit_rows(true).T @ _unit_rows(inferred)


def _best_permutation(gain: np.ndarray):
    k = gain.shape[0]
    if k <= EXHAUSTIVE_MAX_K:
        rows = range(k)
        best, best_score = None, -np.inf
        for perm in permutations(range(k)):
            score = sum(gain[r, perm[r]] for r in rows)
            if score > best_score:
                best, best_score = perm, score
        return np.array(best), "exhaustive"
    _, cols = linear_sum_assignment(gain, maximize=True)
    return cols, "hungarian"


def cosine_similarity(
    true_u: np.ndarray,
    true_v: np.ndarray,
    inf_u: np.ndarray,
    inf_v: np.ndarray
) -> CommunityRecoveryReport:
    """
    Node-averaged cosine similarity of u and v after aligning community labels.

    One column permutation is applied to both inferred matrices. Since the
    row norms do not depend on the permutation, the objective is a linear
    assignment over the K x K gain matrix; zero rows contribute 0.

    Args:
        true_u, true_v: Planted memberships, shape (N, K)
        inf_u, inf_v: Inferred memberships, shape (N, K)

    Returns:
        CommunityRecoveryReport with the aligning permutation
    """
    matrices = [np.asarray(m, dtype=float) for m in (true_u, true_v, inf_u, inf_v)]
    shape = matrices[0].shape
    if len(shape) != 2 or any(m.shape != shape for m in matrices):
        raise ValidationError(
            f"membership matrices must share one (N, K) shape, got {[m.shape for m in matrices]}"
        )
    n = shape[0]
    if n == 0:
        raise ValidationError("membership matrices have no rows")

    gain_u = _alignment_gain(matrices[0], matrices[2])
    gain_v = _alignment_gain(matrices[1], matrices[3])
    perm, method = _best_permutation(gain_u + gain_v)

    rows = np.arange(shape[1])
    u_sim = float(np.clip(gain_u[rows, perm].sum() / n, 0.0, 1.0))
    v_sim = float(np.clip(gain_v[rows, perm].sum() / n, 0.0, 1.0))

    return CommunityRecoveryReport(
        cosine_similarity=float(np.clip(0.5 * (u_sim + v_sim), 0.0, 1.0)),
        u_similarity=u_sim,
        v_similarity=v_sim,
        permutation=[int(p) for p in perm],
        alignment_method=method,
    )


def overlapping_modularity(
    g: DirectedBinaryGraph,
    memberships: np.ndarray,
    aggregation: str = "mean"
) -> float:
    """
    Directed overlapping modularity.

    Belonging coefficients are built from the row-normalized memberships ũ:
    β_ijc = F(ũ_ic, ũ_jc), β^out_ic = mean_j β_ijc, β^in_jc = mean_i β_ijc,
    and

        Q = 1/M Σ_c [ Σ_(i,j)∈E β_ijc - (Σ_i β^out_ic k^out_i)(Σ_j β^in_jc k^in_j) / M ].

    Nodes with an all-zero membership row take no part in any sum.

    Args:
        g: Directed graph
        memberships: Non-negative (N, K) matrix
        aggregation: F, one of mean, max or product
    """
    if aggregation not in AGGREGATIONS:
        raise ValidationError(
            f"aggregation must be one of {sorted(AGGREGATIONS)}, got '{aggregation}'"
        )
    memberships = np.asarray(memberships, dtype=float)
    if memberships.ndim != 2 or memberships.shape[0] != g.n_nodes:
        raise ValidationError(
            f"memberships must have shape ({g.n_nodes}, K), got {memberships.shape}"
        )
    if np.any(memberships < 0):
        raise ValidationError("memberships contain negative entries")
    if g.n_edges == 0:
        return 0.0

    totals = memberships.sum(axis=1, keepdims=True)
    valid = totals[:, 0] > 0
    if not np.any(valid):
        return 0.0
    if not np.all(valid):
        logger.debug("modularity_zero_rows_excluded", nodes=int((~valid).sum()))
    shares = np.zeros_like(memberships)
    np.divide(memberships, totals, out=shares, where=totals > 0)

    combine = AGGREGATIONS[aggregation]
    m = float(g.n_edges)
    n_valid = int(valid.sum())
    weight = np.outer(valid, valid).astype(float)
    src, dst = g.sources, g.targets
    k_out, k_in = g.out_degree.astype(float), g.in_degree.astype(float)

    q = 0.0
    for c in range(shares.shape[1]):
        x = shares[:, c]
        beta = combine(x[:, None], x[None, :]) * weight
        observed = beta[src, dst].sum()
        beta_out = beta.sum(axis=1) / n_valid
        beta_in = beta.sum(axis=0) / n_valid
        q += observed - (beta_out @ k_out) * (beta_in @ k_in) / m
    return float(q / m)
