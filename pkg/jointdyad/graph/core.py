"""
Sparse directed binary graph.

The observed adjacency A of the model: N nodes, no self-loops, no
duplicate edges. Values are immutable after construction and may be
shared between workers.
"""

from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from jointdyad.utils.exceptions import ValidationError


class DirectedBinaryGraph:
    """
    Directed unweighted graph stored as sorted (source, target) arrays.

    Attributes:
        n_nodes: Number of nodes N
        sources: Edge sources, sorted by (source, target)
        targets: Edge targets aligned with ``sources``
        node_labels: External labels, index i carries ``node_labels[i]``
    """

    def __init__(
        self,
        n_nodes: int,
        edges: Iterable[Tuple[int, int]],
        node_labels: Optional[Sequence[str]] = None
    ):
        if n_nodes < 0:
            raise ValidationError(f"n_nodes must be >= 0, got {n_nodes}")

        pairs = np.array(sorted(set((int(i), int(j)) for i, j in edges)), dtype=np.int64)
        if pairs.size == 0:
            pairs = np.empty((0, 2), dtype=np.int64)

        if len(pairs) and (pairs.min() < 0 or pairs.max() >= n_nodes):
            raise ValidationError(f"edge endpoints must lie in [0, {n_nodes})")
        if len(pairs) and np.any(pairs[:, 0] == pairs[:, 1]):
            raise ValidationError("self-loops are not allowed")

        if node_labels is not None:
            node_labels = tuple(str(label) for label in node_labels)
            if len(node_labels) != n_nodes:
                raise ValidationError(
                    f"expected {n_nodes} node labels, got {len(node_labels)}"
                )
            if len(set(node_labels)) != n_nodes:
                raise ValidationError("node labels must be unique")

        self.n_nodes = int(n_nodes)
        self.sources = pairs[:, 0].copy()
        self.targets = pairs[:, 1].copy()
        self.sources.flags.writeable = False
        self.targets.flags.writeable = False
        self.node_labels = node_labels

    @classmethod
    def from_adjacency(
        cls,
        adjacency,
        node_labels: Optional[Sequence[str]] = None
    ) -> "DirectedBinaryGraph":
        """Build from a dense or sparse 0/1 matrix; the diagonal is ignored."""
        coo = sp.coo_matrix(adjacency)
        keep = (coo.data != 0) & (coo.row != coo.col)
        edges = zip(coo.row[keep].tolist(), coo.col[keep].tolist())
        return cls(coo.shape[0], edges, node_labels=node_labels)

    @property
    def n_edges(self) -> int:
        return int(self.sources.size)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return list(zip(self.sources.tolist(), self.targets.tolist()))

    def labels(self) -> Tuple[str, ...]:
        """External labels, defaulting to the stringified indices."""
        if self.node_labels is not None:
            return self.node_labels
        return tuple(str(i) for i in range(self.n_nodes))

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Sparse CSR adjacency A."""
        data = np.ones(self.n_edges, dtype=np.int8)
        return sp.csr_matrix(
            (data, (self.sources, self.targets)),
            shape=(self.n_nodes, self.n_nodes),
        )

    @cached_property
    def dense(self) -> np.ndarray:
        """Dense float adjacency A (read-only)."""
        A = self.adjacency.toarray().astype(float)
        A.flags.writeable = False
        return A

    @cached_property
    def out_degree(self) -> np.ndarray:
        return np.bincount(self.sources, minlength=self.n_nodes)

    @cached_property
    def in_degree(self) -> np.ndarray:
        return np.bincount(self.targets, minlength=self.n_nodes)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def relabel(self, permutation: Sequence[int]) -> "DirectedBinaryGraph":
        """Graph with node i renamed to ``permutation[i]``."""
        perm = np.asarray(permutation, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.n_nodes)):
            raise ValidationError("permutation must reorder all node indices")
        labels = None
        if self.node_labels is not None:
            labels = [""] * self.n_nodes
            for old, new in enumerate(perm.tolist()):
                labels[new] = self.node_labels[old]
        edges = zip(perm[self.sources].tolist(), perm[self.targets].tolist())
        return DirectedBinaryGraph(self.n_nodes, edges, node_labels=labels)

    def without_isolated_nodes(self) -> "DirectedBinaryGraph":
        """Induced graph on nodes with at least one incident edge."""
        active = np.flatnonzero((self.out_degree + self.in_degree) > 0)
        index = np.full(self.n_nodes, -1, dtype=np.int64)
        index[active] = np.arange(active.size)
        labels = None
        if self.node_labels is not None:
            labels = [self.node_labels[i] for i in active.tolist()]
        edges = zip(index[self.sources].tolist(), index[self.targets].tolist())
        return DirectedBinaryGraph(int(active.size), edges, node_labels=labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedBinaryGraph):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and np.array_equal(self.sources, other.sources)
            and np.array_equal(self.targets, other.targets)
        )

    def __hash__(self) -> int:
        return hash((self.n_nodes, self.sources.tobytes(), self.targets.tobytes()))

    def __repr__(self) -> str:
        return (
            f"<{self.__class__.__name__} "
            f"n_nodes={self.n_nodes} "
            f"n_edges={self.n_edges}>"
        )
