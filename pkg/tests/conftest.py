import itertools

import numpy as np
import pytest

from hyperspec import WeightedHypergraph


def random_hypergraph(rng, n, r, density=0.7, lo=-2.0, hi=2.0):
    """Random weighted r-graph on n vertices with at least one nonzero edge."""
    while True:
        edges = [(e, float(rng.uniform(lo, hi)))
                 for e in itertools.combinations(range(1, n + 1), r)
                 if rng.random() < density]
        if edges:
            return WeightedHypergraph.from_edges(n, r, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def k3():
    return WeightedHypergraph.from_edges(3, 2, [(1, 2), (1, 3), (2, 3)])
