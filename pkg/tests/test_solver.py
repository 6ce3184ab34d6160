import json
import math

import numpy as np
import pytest

from hyperspec import (
    SolverConfig,
    WeightedHypergraph,
    evaluate_polyform,
    exact_graph_eigen,
    lp_norm,
    project_to_sphere,
    solve_max,
    solve_min,
)
from hyperspec.errors import (
    BadPError,
    ConvergenceSuspectError,
    EmptyOrZeroWeightError,
    HypergraphError,
    NonFiniteError,
    WrongArityError,
    ZeroVectorError,
)
from hyperspec.generators import BlowupSpec, complete_rgraph, counterexample_4graph, kpartite_blowup
from hyperspec.solver import adjacency_matrix, jacobi_eigh, restart_rngs

from conftest import random_hypergraph

EDGE2 = WeightedHypergraph.from_edges(2, 2, [(1, 2)])


def test_triangle_max_and_witness():
    est = solve_max(complete_rgraph(3, 2)[0], SolverConfig(p=2))
    assert est.value == pytest.approx(2.0, abs=1e-8)
    target = np.ones(3) / math.sqrt(3)
    assert min(np.max(np.abs(est.witness - target)), np.max(np.abs(est.witness + target))) < 1e-6


@pytest.mark.parametrize("h, p, expected", [
    (complete_rgraph(4, 4)[0], 4.0, 6.0),
    (counterexample_4graph(4), 4.0, 108.0),
])
def test_max_examples(h, p, expected):
    assert solve_max(h, SolverConfig(p=p)).value == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("h, p, expected", [
    (complete_rgraph(3, 2)[0], 2.0, -1.0),
    (complete_rgraph(4, 4)[0], 4.0, -6.0),
    (counterexample_4graph(2), 4.0, -6.0),
])
def test_min_examples(h, p, expected):
    assert solve_min(h, SolverConfig(p=p)).value == pytest.approx(expected, abs=1e-8)


def test_single_3edge_matches_frozen_oracle_values():
    h = WeightedHypergraph.from_edges(3, 3, [(1, 2, 3)])
    cfg = SolverConfig(p=3)
    assert solve_max(h, cfg).value == pytest.approx(2.0, abs=1e-8)
    assert solve_min(h, cfg).value == pytest.approx(-2.0, abs=1e-8)


def test_default_p_is_r():
    est = solve_max(complete_rgraph(4, 4)[0])
    assert est.p == 4.0


@pytest.mark.parametrize("kind", [solve_max, solve_min])
def test_estimate_invariants(rng, kind):
    for p in (2.0, 3.0, 5.0):
        h = random_hypergraph(rng, 6, 3)
        est = kind(h, SolverConfig(p=p, restarts=16))
        assert lp_norm(est.witness, p) == pytest.approx(1.0, abs=1e-10)
        assert evaluate_polyform(h, est.witness) == pytest.approx(est.value, rel=1e-10)
        assert 0 <= est.best_restart_index < est.restarts_run
        assert est.restarts_converged <= est.restarts_run
        assert est.iterations_used <= est.total_iterations


def test_exact_eigen_examples():
    hi, lo = exact_graph_eigen(complete_rgraph(3, 2)[0])
    assert (hi.value, lo.value) == pytest.approx((2.0, -1.0), abs=1e-12)
    hi, lo = exact_graph_eigen(kpartite_blowup(BlowupSpec(3, 2, 2))[0])
    assert (hi.value, lo.value) == pytest.approx((4.0, -2.0), abs=1e-12)
    hi, lo = exact_graph_eigen(EDGE2)
    assert (hi.value, lo.value) == pytest.approx((1.0, -1.0), abs=1e-12)
    assert np.linalg.norm(hi.witness) == pytest.approx(1.0, abs=1e-14)


def test_exact_eigen_wrong_arity():
    with pytest.raises(WrongArityError):
        exact_graph_eigen(complete_rgraph(4, 3)[0])
    with pytest.raises(WrongArityError):
        adjacency_matrix(complete_rgraph(4, 3)[0])


def test_jacobi_matches_lapack(rng):
    for n in (1, 2, 5, 9):
        a = rng.normal(size=(n, n))
        a = a + a.T
        vals, vecs = jacobi_eigh(a)
        np.testing.assert_allclose(np.sort(vals), np.linalg.eigvalsh(a), atol=1e-10)
        np.testing.assert_allclose(a @ vecs, vecs * vals, atol=1e-9)


def test_solver_matches_eigenvalues_on_random_graphs(rng):
    for _ in range(5):
        h = random_hypergraph(rng, 7, 2)
        hi, lo = exact_graph_eigen(h)
        cfg = SolverConfig(p=2)
        assert solve_max(h, cfg).value == pytest.approx(hi.value, abs=1e-8)
        assert solve_min(h, cfg).value == pytest.approx(lo.value, abs=1e-8)


@pytest.mark.parametrize("x, p, expected", [
    ((3, 4), 2, (0.6, 0.8)),
    ((1, 1, 1, 1), 4, (4 ** -0.25,) * 4),
])
def test_project_to_sphere(x, p, expected):
    np.testing.assert_allclose(project_to_sphere(x, p), expected, rtol=1e-15)


def test_project_zero_vector():
    with pytest.raises(ZeroVectorError):
        project_to_sphere((0, 0), 2)


def test_restart_streams_are_reproducible():
    a = [g.random() for g in restart_rngs(5, 4)]
    b = [g.random() for g in restart_rngs(5, 4)]
    assert a == b and len(set(a)) == 4


def test_threaded_restarts_are_deterministic():
    h = counterexample_4graph(4)
    serial = solve_min(h, SolverConfig(p=4, restarts=24, seed=3))
    threaded = solve_min(h, SolverConfig(p=4, restarts=24, seed=3, workers=4))
    assert serial.value == threaded.value
    assert serial.best_restart_index == threaded.best_restart_index
    assert np.array_equal(serial.witness, threaded.witness)


def test_seed_changes_streams_not_optimum():
    h = complete_rgraph(5, 4)[0]
    a = solve_max(h, SolverConfig(seed=1, restarts=8))
    b = solve_max(h, SolverConfig(seed=2, restarts=8))
    assert a.value == pytest.approx(b.value, rel=1e-12)


@pytest.mark.parametrize("c", [3.7, 1e-3, 250.0])
def test_scaling_equivariance(rng, c):
    h = random_hypergraph(rng, 6, 4, density=0.9)
    cfg = SolverConfig(restarts=16)
    for solve in (solve_max, solve_min):
        base = solve(h, cfg).value
        scaled = solve(h.scaled(c), cfg).value
        assert scaled == pytest.approx(c * base, rel=1e-10)


def test_min_bounds_random_samples(rng):
    for _ in range(5):
        h = random_hypergraph(rng, 6, 4, density=0.8)
        lo = solve_min(h).value
        X = rng.uniform(-1, 1, (1000, 6))
        assert min(evaluate_polyform(h, project_to_sphere(x, 4)) for x in X) >= lo - 1e-8


def test_extra_starts_run_first():
    h = complete_rgraph(3, 2)[0]
    est = solve_max(h, SolverConfig(p=2, restarts=4), starts=[np.ones(3)])
    assert est.best_restart_index == 0
    assert est.restarts_run == 5


def test_start_shape_checked():
    with pytest.raises(HypergraphError):
        solve_max(EDGE2, SolverConfig(p=2), starts=[np.ones(3)])


def test_fixed_step_policy():
    est = solve_max(complete_rgraph(3, 2)[0], SolverConfig(p=2, step="fixed", alpha=0.1))
    assert est.value == pytest.approx(2.0, abs=1e-8)


def test_fixed_step_overflow_is_nonfinite():
    with pytest.raises(NonFiniteError):
        solve_max(complete_rgraph(3, 2)[0],
                  SolverConfig(p=2, step="fixed", alpha=1e308, restarts=2))


def test_suspect_result_reported():
    # without iterations the value is just the random start, which may be negative
    h = EDGE2
    for seed in range(100):
        x = restart_rngs(seed, 1)[0].uniform(-1, 1, 2)
        if x[0] * x[1] < 0:
            break
    with pytest.raises(ConvergenceSuspectError):
        solve_max(h, SolverConfig(p=2, restarts=1, max_iters=0, seed=seed))


def test_empty_hypergraph_rejected():
    with pytest.raises(EmptyOrZeroWeightError):
        solve_max(WeightedHypergraph(3, 2, ()))


@pytest.mark.parametrize("kwargs, err", [
    ({"restarts": 0}, HypergraphError),
    ({"grad_tol": 0}, HypergraphError),
    ({"shrink": 1.0}, HypergraphError),
    ({"step": "newton"}, HypergraphError),
    ({"p": 0.5}, BadPError),
])
def test_config_validation(kwargs, err):
    with pytest.raises(err):
        SolverConfig(**kwargs)


def test_p_below_r_still_solves():
    est = solve_max(complete_rgraph(4, 4)[0], SolverConfig(p=2))
    assert est.value == pytest.approx(24 * 4 ** -2, rel=1e-8)


def test_estimate_serializes():
    est = solve_max(complete_rgraph(3, 2)[0], SolverConfig(p=2, restarts=2))
    d = json.loads(json.dumps(est.to_dict()))
    assert d["kind"] == "max" and len(d["witness"]) == 3
