import itertools
from math import comb

import pytest

from hyperspec import check_partition, validate
from hyperspec.errors import BadArityError, BadDensityError, BadOrderError
from hyperspec.generators import (
    RANDOM_GENERATOR_ID,
    BlowupSpec,
    complete_rgraph,
    counterexample_4graph,
    counterexample_coloring,
    kpartite_blowup,
    random_kpartite,
)


@pytest.mark.parametrize("k, r, m", [(3, 2, 3), (4, 4, 1), (5, 3, 10), (6, 4, 15)])
def test_complete_edge_counts(k, r, m):
    h, cert = complete_rgraph(k, r)
    validate(h)
    check_partition(h, cert)
    assert (h.n, h.m) == (k, m)
    assert cert.part_of == tuple(range(1, k + 1))


def test_complete_single_edge():
    h, _ = complete_rgraph(4, 4)
    assert h.edges == (((1, 2, 3, 4), 1.0),)


def test_complete_rejects_k_below_r():
    with pytest.raises(BadArityError):
        complete_rgraph(2, 3)


@pytest.mark.parametrize("k, r, t, n, m", [
    (3, 2, 2, 6, 12), (3, 2, 1, 3, 3), (4, 4, 2, 8, 16), (4, 2, 3, 12, 54),
])
def test_blowup_counts(k, r, t, n, m):
    h, cert = kpartite_blowup(BlowupSpec(k, r, t))
    validate(h)
    check_partition(h, cert)
    assert (h.n, h.m) == (n, m)
    assert h.m == t ** r * comb(k, r)


def test_blowup_t1_is_complete_graph():
    h, _ = kpartite_blowup(BlowupSpec(3, 2, 1))
    assert h.edges == complete_rgraph(3, 2)[0].edges


@pytest.mark.parametrize("k, r, t", [(3, 2, 2), (4, 4, 2), (5, 3, 3)])
def test_blowup_is_regular(k, r, t):
    h, _ = kpartite_blowup(BlowupSpec(k, r, t))
    assert len(set(h.degrees().tolist())) == 1


@pytest.mark.parametrize("k, r, t", [(1, 2, 1), (3, 4, 1), (3, 2, 0), (3, 1, 2)])
def test_blowup_spec_validation(k, r, t):
    with pytest.raises(BadArityError):
        BlowupSpec(k, r, t)


@pytest.mark.parametrize("n, m", [(2, 1), (4, 36), (6, 225)])
def test_counterexample_counts(n, m):
    h = counterexample_4graph(n)
    validate(h)
    assert (h.n, h.r, h.m) == (2 * n, 4, m)


def test_counterexample_single_edge():
    assert counterexample_4graph(2).edges == (((1, 2, 3, 4), 1.0),)


@pytest.mark.parametrize("n", [3, 0, 1, -2])
def test_counterexample_bad_order(n):
    with pytest.raises(BadOrderError):
        counterexample_4graph(n)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_counterexample_is_two_chromatic(n):
    h = counterexample_4graph(n)
    colour = counterexample_coloring(n).part_of
    for verts, _ in h.edges:
        assert {colour[v - 1] for v in verts} == {1, 2}
        assert sum(v <= n for v in verts) == 2


def test_random_density_one_singletons_is_complete():
    h, cert = random_kpartite(4, 4, [1, 1, 1, 1], 1.0, (1.0, 1.0), seed=0)
    assert h.edges == complete_rgraph(4, 4)[0].edges
    assert cert.k == 4


def test_random_complete_four_partite_graph():
    h, cert = random_kpartite(4, 2, [2, 2, 2, 2], 1.0, (1.0, 1.0), seed=0)
    assert h.m == 24
    check_partition(h, cert)


def test_random_is_deterministic():
    a = random_kpartite(5, 4, [1, 2, 3, 2, 1], 0.5, (-2.0, 2.0), seed=42)
    b = random_kpartite(5, 4, [1, 2, 3, 2, 1], 0.5, (-2.0, 2.0), seed=42)
    c = random_kpartite(5, 4, [1, 2, 3, 2, 1], 0.5, (-2.0, 2.0), seed=43)
    assert a[0].edges == b[0].edges and a[1] == b[1]
    assert a[0].edges != c[0].edges


def test_random_outputs_validate_and_respect_parts():
    for seed in range(20):
        h, cert = random_kpartite(4, 3, [2, 1, 3, 2], 0.3, (-1.0, 1.0), seed=seed)
        validate(h)
        check_partition(h, cert)
        assert all(-1.0 <= w <= 1.0 for _, w in h.edges)


def test_random_sparse_still_nonempty():
    for seed in range(10):
        h, _ = random_kpartite(4, 4, [1, 1, 1, 1], 0.01, (1.0, 1.0), seed=seed)
        assert h.m == 1


@pytest.mark.parametrize("density", [0.0, -0.1, 1.5])
def test_random_bad_density(density):
    with pytest.raises(BadDensityError):
        random_kpartite(4, 2, [1, 1, 1, 1], density, seed=0)


@pytest.mark.parametrize("k, r, sizes", [(3, 4, [1, 1, 1]), (4, 2, [1, 1, 1]), (4, 2, [1, 0, 1, 1])])
def test_random_bad_arity(k, r, sizes):
    with pytest.raises(BadArityError):
        random_kpartite(k, r, sizes, 1.0, seed=0)


def test_generator_id_names_the_stream():
    assert "PCG64" in RANDOM_GENERATOR_ID and "v1" in RANDOM_GENERATOR_ID


def test_transversal_edges_only():
    h, cert = random_kpartite(3, 2, [3, 3, 3], 1.0, seed=1)
    assert h.m == 27
    for verts, _ in h.edges:
        parts = [cert.part_of[v - 1] for v in verts]
        assert len(set(parts)) == len(parts)
    assert {e for e, _ in h.edges} <= set(itertools.combinations(range(1, 10), 2))
