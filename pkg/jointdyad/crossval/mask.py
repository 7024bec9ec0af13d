"""
Symmetric dyad masks for k-fold cross-validation.

A fold holds whole unordered dyads {i, j}: both A_ij and A_ji are hidden
or shown together.
"""

from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from jointdyad.utils.exceptions import ValidationError
from jointdyad.utils.random import substream


class DyadMask(BaseModel):
    """
    Fold index of every unordered dyad.

    ``assignment[d]`` is the fold of the d-th dyad in ``np.triu_indices(n_nodes, 1)`` order.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_nodes: int
    n_folds: int
    seed: int
    assignment: np.ndarray

    def _dyads(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.triu_indices(self.n_nodes, k=1)

    def _check_fold(self, fold: int) -> None:
        if not 0 <= fold < self.n_folds:
            raise ValidationError(f"fold must lie in [0, {self.n_folds}), got {fold}")

    def fold_sizes(self) -> List[int]:
        return np.bincount(self.assignment, minlength=self.n_folds).tolist()

    def test_dyads(self, fold: int) -> Tuple[np.ndarray, np.ndarray]:
        """Held-out dyads (i < j) of ``fold``."""
        self._check_fold(fold)
        iu, ju = self._dyads()
        held_out = self.assignment == fold
        return iu[held_out], ju[held_out]

    def train_dyads(self, fold: int) -> Tuple[np.ndarray, np.ndarray]:
        """Dyads (i < j) outside ``fold``."""
        self._check_fold(fold)
        iu, ju = self._dyads()
        kept = self.assignment != fold
        return iu[kept], ju[kept]

    def train_matrix(self, fold: int) -> np.ndarray:
        """Symmetric boolean N x N matrix of training dyads; diagonal False."""
        ti, tj = self.train_dyads(fold)
        train = np.zeros((self.n_nodes, self.n_nodes), dtype=bool)
        train[ti, tj] = True
        train[tj, ti] = True
        return train


def make_mask(n_nodes: int, n_folds: int, seed: int) -> DyadMask:
    """
    Uniform random partition of the N(N-1)/2 dyads into near-equal folds.

    The dyads are shuffled and dealt round-robin, so the first
    (dyads mod n_folds) folds carry one extra dyad.
    """
    if n_folds < 2:
        raise ValidationError(f"n_folds must be >= 2, got {n_folds}")
    n_dyads = n_nodes * (n_nodes - 1) // 2
    if n_dyads < n_folds:
        raise ValidationError(
            f"{n_nodes} nodes give {n_dyads} dyads, fewer than {n_folds} folds"
        )

    order = substream(seed, "mask").permutation(n_dyads)
    assignment = np.empty(n_dyads, dtype=np.int64)
    assignment[order] = np.arange(n_dyads) % n_folds
    assignment.setflags(write=False)

    return DyadMask(n_nodes=n_nodes, n_folds=n_folds, seed=seed, assignment=assignment)
