import numpy as np
import pytest

from hyperspec import WeightedHypergraph, evaluate_polyform, gradient_polyform
from hyperspec.errors import DimensionMismatchError, HypergraphError, TooLargeError
from hyperspec.generators import complete_rgraph, counterexample_4graph
from hyperspec.oracle import (
    _compositions,
    exhaustive_expand,
    expansion_magnitude,
    fd_gradient,
    grid_extrema,
)
from hyperspec.solver import exact_graph_eigen

from conftest import random_hypergraph

EDGE2 = WeightedHypergraph.from_edges(2, 2, [(1, 2)])
EDGE3 = WeightedHypergraph.from_edges(3, 3, [(1, 2, 3)])


def test_expand_triangle(k3):
    assert exhaustive_expand(k3, (1, 2, 3)) == 22.0


def test_expand_single_4edge():
    assert exhaustive_expand(counterexample_4graph(2), (1, 1, 1, 1)) == 24.0


def test_expand_matches_kernel_evaluation(rng):
    for _ in range(50):
        n = int(rng.integers(3, 9))
        h = random_hypergraph(rng, n, int(rng.integers(2, min(n, 5) + 1)))
        x = rng.uniform(-2, 2, n)
        diff = abs(exhaustive_expand(h, x) - evaluate_polyform(h, x))
        assert diff <= 1e-12 * expansion_magnitude(h, x)


def test_expand_dimension_mismatch(k3):
    with pytest.raises(DimensionMismatchError):
        exhaustive_expand(k3, (1, 2))
    with pytest.raises(DimensionMismatchError):
        fd_gradient(k3, (1, 2))


def test_fd_hand_gradient():
    np.testing.assert_allclose(fd_gradient(EDGE2, (3, 5), 1e-6), [10, 6], rtol=1e-8)


def test_fd_zero_vector_high_arity(rng):
    h = random_hypergraph(rng, 5, 3)
    assert np.max(np.abs(fd_gradient(h, np.zeros(5), 1e-6))) < 1e-9


def test_fd_rejects_nonpositive_step(k3):
    with pytest.raises(HypergraphError):
        fd_gradient(k3, (1, 1, 1), 0.0)


def test_fd_matches_gradient_random_4graph(rng):
    h = random_hypergraph(rng, 5, 4, density=1.0)
    x = rng.uniform(-1, 1, 5)
    g = gradient_polyform(h, x)
    assert np.max(np.abs(fd_gradient(h, x, 1e-5) - g)) / np.max(np.abs(g)) < 1e-5


def test_fd_exact_for_multilinear_form(rng):
    # each variable enters at most linearly, so central differences carry no
    # truncation error: only roundoff remains, even at large steps
    h = random_hypergraph(rng, 5, 4, density=1.0)
    x = rng.uniform(-1, 1, 5)
    g = gradient_polyform(h, x)
    for step in (1e-1, 1e-2, 1e-3):
        assert np.max(np.abs(fd_gradient(h, x, step) - g)) < 1e-12 * np.max(np.abs(g)) / step


def test_compositions_count_and_sum():
    comps = _compositions(6, 3)
    assert len(comps) == 28
    assert np.all(comps.sum(axis=1) == 6)
    assert len({tuple(c) for c in comps}) == 28


def test_grid_triangle(k3):
    g = grid_extrema(k3, 2.0, 24)
    assert g.max_lb >= 1.999 and g.min_ub <= -0.999
    assert g.max_lb <= 2.0 + 1e-12 and g.min_ub >= -1.0 - 1e-12
    assert g.grid_points == 8 * len(_compositions(24, 3))


def test_grid_single_4edge_min():
    g = grid_extrema(complete_rgraph(4, 4)[0], 4.0, 24)
    assert g.min_ub <= -5.999


def test_grid_single_edge_graph():
    assert grid_extrema(EDGE2, 2.0, 8).max_lb >= 0.999


def test_grid_witnesses_are_feasible(k3):
    g = grid_extrema(k3, 3.0, 12)
    for x, v in ((g.max_witness, g.max_lb), (g.min_witness, g.min_ub)):
        assert np.sum(np.abs(x) ** 3) == pytest.approx(1.0, abs=1e-12)
        assert evaluate_polyform(k3, x) == pytest.approx(v, abs=1e-12)


# values frozen from the grid oracle; the solver tests compare against these
@pytest.mark.parametrize("h, p, hi, lo", [
    (EDGE3, 3.0, 2.0, -2.0),
    (complete_rgraph(4, 4)[0], 4.0, 6.0, -6.0),
    (counterexample_4graph(2), 4.0, 6.0, -6.0),
])
def test_grid_frozen_values(h, p, hi, lo):
    g = grid_extrema(h, p, 24)
    assert g.max_lb == pytest.approx(hi, abs=1e-9)
    assert g.min_ub == pytest.approx(lo, abs=1e-9)


def test_grid_agrees_with_eigenvalues(rng):
    for n in (3, 4, 5, 6):
        h = random_hypergraph(rng, n, 2)
        g = grid_extrema(h, 2.0, 24 if n < 6 else 12)
        hi, lo = exact_graph_eigen(h)
        assert abs(g.max_lb - hi.value) < 1e-4
        assert abs(g.min_ub - lo.value) < 1e-4


def test_grid_too_large():
    with pytest.raises(TooLargeError):
        grid_extrema(complete_rgraph(7, 2)[0], 2.0)


def test_grid_rejects_coarse_resolution(k3):
    with pytest.raises(HypergraphError):
        grid_extrema(k3, 2.0, 3)


def test_grid_to_dict(k3):
    d = grid_extrema(k3, 2.0, 6).to_dict()
    assert set(d) == {"max_lb", "min_ub", "max_witness", "min_witness", "grid_points"}
    assert isinstance(d["max_witness"], list)
