"""Shared fixtures: the small hand-analysed graphs used across the suite.

Expected values for these fixtures were derived by hand and cross-checked
with the exact-arithmetic reference implementation before the fast kernels
were written; the tests encode those numbers directly.
"""

import numpy as np
import pytest

from netdefend import Graph, warm_up


def graph_from_edges(n, edges):
    return Graph(n, np.asarray(edges, dtype=np.int64))


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    """Compile the numba kernels once so per-test timings stay honest."""
    warm_up()


@pytest.fixture
def star5():
    """Hub-and-spoke on 5 nodes: node 0 joined to 1..4."""
    return graph_from_edges(5, [[0, i] for i in range(1, 5)])


@pytest.fixture
def path4():
    """Path 0-1-2-3."""
    return graph_from_edges(4, [[0, 1], [1, 2], [2, 3]])


@pytest.fixture
def cycle5():
    """Ring on 5 nodes."""
    return graph_from_edges(5, [[i, (i + 1) % 5] for i in range(5)])


@pytest.fixture
def two_hub():
    """Two 3-leaf hubs joined by an edge: hubs 0 and 1, leaves 2..7."""
    edges = [[0, 1], [0, 2], [0, 3], [0, 4], [1, 5], [1, 6], [1, 7]]
    return graph_from_edges(8, edges)


def random_graph(rng, max_nodes=40):
    """A random simple graph, sometimes disconnected, for property tests."""
    n = int(rng.integers(2, max_nodes + 1))
    p = float(rng.uniform(0.05, 0.5))
    mask = rng.random((n, n)) < p
    upper = np.triu(mask, k=1)
    edges = np.argwhere(upper)
    return Graph(n, edges.reshape(-1, 2))


def random_alive_mask(rng, n):
    """A non-trivial alive mask; often splits the graph apart."""
    alive = rng.random(n) < rng.uniform(0.4, 1.0)
    if not alive.any():
        alive[int(rng.integers(0, n))] = True
    return alive
