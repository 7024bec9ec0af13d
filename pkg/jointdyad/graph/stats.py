"""
Structural statistics of directed binary graphs.
"""

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field

from jointdyad.graph.core import DirectedBinaryGraph


class GraphStats(BaseModel):
    """Summary row as reported for observed and sampled networks"""
    n_nodes: int = Field(ge=0)
    n_edges: int = Field(ge=0)
    avg_degree: float = Field(ge=0)
    reciprocity: float = Field(ge=0, le=1)
    clustering: float = Field(ge=0, le=1)


def reciprocated_edges(g: DirectedBinaryGraph) -> int:
    """Number of ordered edges (i, j) whose reverse (j, i) exists."""
    if g.n_edges == 0:
        return 0
    A = g.adjacency
    return int(A.multiply(A.T).sum())


def reciprocity(g: DirectedBinaryGraph) -> float:
    """
    Fraction of ordered edges whose reverse edge also exists.

    Returns 0 for a graph without edges.
    """
    if g.n_edges == 0:
        return 0.0
    return reciprocated_edges(g) / g.n_edges


def undirected_projection(g: DirectedBinaryGraph) -> nx.Graph:
    """Undirected simple graph with a tie wherever either direction exists."""
    projection = nx.Graph()
    projection.add_nodes_from(range(g.n_nodes))
    projection.add_edges_from(g.edges)
    return projection


def clustering_coefficient(g: DirectedBinaryGraph) -> float:
    """
    Average local clustering of the undirected projection.

    Nodes with fewer than two neighbours contribute 0.
    """
    if g.n_nodes == 0 or g.n_edges == 0:
        return 0.0
    return float(nx.average_clustering(undirected_projection(g)))


def average_degree(g: DirectedBinaryGraph) -> float:
    """Total (in + out) degree per node, 2M/N."""
    if g.n_nodes == 0:
        return 0.0
    return 2.0 * g.n_edges / g.n_nodes


def graph_stats(g: DirectedBinaryGraph) -> GraphStats:
    """Compute N, M, <k>, reciprocity and clustering for ``g``."""
    return GraphStats(
        n_nodes=g.n_nodes,
        n_edges=g.n_edges,
        avg_degree=average_degree(g),
        reciprocity=float(np.clip(reciprocity(g), 0.0, 1.0)),
        clustering=float(np.clip(clustering_coefficient(g), 0.0, 1.0)),
    )
