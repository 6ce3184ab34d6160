"""Hypergraph families: complete r-graphs, regular k-partite blow-ups, the
2-chromatic 4-graph family with unbounded spectral ratio, and seeded random
k-partite instances.

Parts are always laid out consecutively: part 1 holds the lowest vertex
numbers, part 2 the next block, and so on.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .core import PartitionCertificate, WeightedHypergraph
from .errors import BadArityError, BadDensityError, BadOrderError

#: Identifies the random stream contract recorded alongside generated instances.
#: Stream: ``numpy.random.Generator(PCG64(SeedSequence(seed)))``; one call to
#: ``random(N)`` for inclusion, then ``uniform(lo, hi, N)`` for weights, over the
#: N candidate transversals in lexicographic order; repeated until a nonzero
#: edge is drawn.
RANDOM_GENERATOR_ID = "hyperspec.random_kpartite/v1 numpy.PCG64+SeedSequence"


@dataclass(frozen=True)
class BlowupSpec:
    k: int
    r: int
    t: int

    def __post_init__(self):
        if not (self.k >= self.r >= 2):
            raise BadArityError(f"blow-up needs k >= r >= 2, got k={self.k}, r={self.r}")
        if self.t < 1:
            raise BadArityError(f"part size t={self.t} must be positive")


def _consecutive_parts(sizes):
    parts, start = [], 1
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    return parts


def _certificate(sizes):
    return PartitionCertificate(
        len(sizes), tuple(c for c, s in enumerate(sizes, start=1) for _ in range(s)))


def _transversals(parts, r):
    for chosen in itertools.combinations(parts, r):
        yield from itertools.product(*chosen)


def complete_rgraph(k: int, r: int):
    """K_k^r with unit weights, plus its singleton-part certificate."""
    if not (k >= r >= 2):
        raise BadArityError(f"complete r-graph needs k >= r >= 2, got k={k}, r={r}")
    edges = tuple((e, 1.0) for e in itertools.combinations(range(1, k + 1), r))
    return WeightedHypergraph(k, r, edges), _certificate([1] * k)


def kpartite_blowup(spec: BlowupSpec):
    """Complete regular k-partite r-graph with parts of size ``t``."""
    sizes = [spec.t] * spec.k
    parts = _consecutive_parts(sizes)
    edges = tuple((e, 1.0) for e in _transversals(parts, spec.r))
    return WeightedHypergraph(spec.k * spec.t, spec.r, edges), _certificate(sizes)


def counterexample_4graph(n: int) -> WeightedHypergraph:
    """4-graph on A = 1..n, B = n+1..2n whose edges meet A in exactly two vertices."""
    if n < 2 or n % 2:
        raise BadOrderError(f"n={n} must be even and at least 2")
    a_pairs = list(itertools.combinations(range(1, n + 1), 2))
    b_pairs = list(itertools.combinations(range(n + 1, 2 * n + 1), 2))
    edges = tuple((pa + pb, 1.0) for pa in a_pairs for pb in b_pairs)
    assert len(edges) == comb(n, 2) ** 2
    return WeightedHypergraph(2 * n, 4, edges)


def counterexample_coloring(n: int) -> PartitionCertificate:
    """The 2-coloring {A, B}; a valid coloring but not a 2-partition certificate."""
    if n < 2 or n % 2:
        raise BadOrderError(f"n={n} must be even and at least 2")
    return _certificate([n, n])


def random_kpartite(k, r, part_sizes, edge_density, weight_range=(1.0, 1.0), seed=0):
    """Random weighted k-partite r-graph; deterministic in ``seed``.

    Every transversal r-set is kept independently with probability
    ``edge_density`` and weighted uniformly in ``weight_range``.
    """
    if not (k >= r >= 2):
        raise BadArityError(f"need k >= r >= 2, got k={k}, r={r}")
    sizes = [int(s) for s in part_sizes]
    if len(sizes) != k or any(s < 1 for s in sizes):
        raise BadArityError(f"need {k} positive part sizes, got {part_sizes}")
    if not 0.0 < edge_density <= 1.0:
        raise BadDensityError(f"edge density {edge_density} must lie in (0, 1]")
    lo, hi = (float(v) for v in weight_range)
    if lo == hi == 0.0:
        raise BadDensityError("weight range [0, 0] can never give a nonzero edge")

    candidates = list(_transversals(_consecutive_parts(sizes), r))
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    while True:
        keep = rng.random(len(candidates)) < edge_density
        weights = rng.uniform(lo, hi, len(candidates))
        edges = tuple((candidates[i], float(weights[i]))
                      for i in np.flatnonzero(keep))
        if any(wt != 0.0 for _, wt in edges):
            break
    return WeightedHypergraph(sum(sizes), r, edges), _certificate(sizes)
