"""
Shared fixtures.
"""

import os

import numpy as np
import pytest

from jointdyad.generator.benchmark import BenchmarkConfig, generate_benchmark
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.inference.fit import fit
from jointdyad.inference.types import FitConfig
from jointdyad.model.params import ModelParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_params():
    """Random strictly positive parameters."""
    def factory(rng, n_nodes=6, k=2, eta=2.5):
        return ModelParams.create(
            u=rng.uniform(0.1, 1.0, size=(n_nodes, k)),
            v=rng.uniform(0.1, 1.0, size=(n_nodes, k)),
            w=rng.uniform(0.1, 1.0, size=(k, k)),
            eta=eta,
        )
    return factory


@pytest.fixture
def make_graph():
    """Random directed graph with a given edge density."""
    def factory(rng, n_nodes=6, density=0.4):
        A = (rng.random((n_nodes, n_nodes)) < density).astype(int)
        np.fill_diagonal(A, 0)
        return DirectedBinaryGraph.from_adjacency(A)
    return factory


@pytest.fixture
def oracle_params():
    """
    Parameters that reproduce a graph almost surely: one community per
    node, rate 1e6 on edges and 1e-6 elsewhere.
    """
    def factory(g: DirectedBinaryGraph, eta: float = 1.0):
        n = g.n_nodes
        w = np.full((n, n), 1e-6)
        w[g.sources, g.targets] = 1e6
        return ModelParams.create(u=np.eye(n), v=np.eye(n), w=w, eta=eta)
    return factory


@pytest.fixture(scope="session")
def planted():
    """Small planted instance with strong reciprocity."""
    return generate_benchmark(BenchmarkConfig(n_nodes=80, k=2, avg_degree=10, eta=50, seed=11))


@pytest.fixture
def quick_fit_config():
    return FitConfig(k=2, max_iter=200, tol=1e-6, check_every=10, n_restarts=2, seed=3)


@pytest.fixture
def highschool_path():
    path = os.environ.get("JOINTDYAD_HIGHSCHOOL_EDGES")
    if not path:
        pytest.skip("JOINTDYAD_HIGHSCHOOL_EDGES not set")
    return path


@pytest.fixture
def bat_path():
    path = os.environ.get("JOINTDYAD_BAT_EDGES")
    if not path:
        pytest.skip("JOINTDYAD_BAT_EDGES not set")
    return path


@pytest.fixture(scope="session")
def planted_fits():
    """
    Planted instances at weak and strong reciprocity with their fits,
    keyed by the planted η.
    """
    fits = {}
    for eta in (0.1, 1500.0):
        instance = generate_benchmark(BenchmarkConfig(n_nodes=400, k=2, avg_degree=20, eta=eta, seed=3))
        fits[eta] = (instance, fit(instance.graph, FitConfig(k=2, n_restarts=4, seed=0)))
    return fits
