"""Weighted uniform hypergraphs and their polynomial form.

Vertices are 1-based at the API boundary (``edges``, certificates, files) and
0-based in the numpy arrays used by the kernels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    BadEdgeError,
    BadPError,
    DimensionMismatchError,
    DuplicateEdgeError,
    EmptyOrZeroWeightError,
    NotPartiteError,
)

Edge = tuple[tuple[int, ...], float]


@dataclass(frozen=True, eq=False)
class WeightedHypergraph:
    """An r-uniform hypergraph on vertices 1..n with a real weight per edge.

    Edges are stored canonically: vertex tuples sorted ascending, edge list
    sorted lexicographically. Construction does not validate; call
    :func:`validate` (or use :meth:`from_edges`) for that.
    """

    n: int
    r: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        canon = tuple(
            sorted((tuple(sorted(int(v) for v in verts)), float(wt))
                   for verts, wt in self.edges)
        )
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "edges", canon)

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable, weight: float = 1.0):
        """Build and validate. ``edges`` items are vertex tuples or (vertices, w) pairs."""
        items = []
        for item in edges:
            if (len(item) == 2 and not isinstance(item[0], (int, np.integer))):
                items.append((tuple(item[0]), float(item[1])))
            else:
                items.append((tuple(item), float(weight)))
        h = cls(n, r, tuple(items))
        validate(h)
        return h

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index_array(self) -> np.ndarray:
        """0-based (m, r) int64 vertex array, C-contiguous."""
        if not self.edges:
            return np.zeros((0, self.r), dtype=np.int64)
        arr = np.array([verts for verts, _ in self.edges], dtype=np.int64) - 1
        return np.ascontiguousarray(arr)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.array([wt for _, wt in self.edges], dtype=np.float64)

    @property
    def form_scale(self) -> float:
        return float(math.factorial(self.r))

    def scaled(self, c: float) -> "WeightedHypergraph":
        return WeightedHypergraph(self.n, self.r,
                                  tuple((v, c * wt) for v, wt in self.edges))

    def negated(self) -> "WeightedHypergraph":
        return self.scaled(-1.0)

    def relabeled(self, perm: Sequence[int]) -> "WeightedHypergraph":
        """Vertex ``v`` becomes ``perm[v-1]`` (``perm`` is a 1-based permutation list)."""
        return WeightedHypergraph(
            self.n, self.r,
            tuple((tuple(perm[v - 1] for v in verts), wt) for verts, wt in self.edges),
        )

    def degrees(self) -> np.ndarray:
        return np.bincount(self.index_array.ravel(), minlength=self.n)

    def __repr__(self):
        return f"WeightedHypergraph(n={self.n}, r={self.r}, m={self.m})"


@dataclass(frozen=True)
class PartitionCertificate:
    """A k-way vertex partition; ``part_of[v-1]`` is the part (1..k) of vertex v."""

    k: int
    part_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "part_of", tuple(int(c) for c in self.part_of))

    def parts(self) -> list[list[int]]:
        out = [[] for _ in range(self.k)]
        for v, c in enumerate(self.part_of, start=1):
            out[c - 1].append(v)
        return out


def validate(h: WeightedHypergraph) -> None:
    """Raise if ``h`` breaks a structural invariant; return None otherwise."""
    if h.r < 2:
        raise BadEdgeError(f"uniformity r={h.r} must be at least 2")
    seen = set()
    for verts, _ in h.edges:
        if len(verts) != h.r:
            raise BadEdgeError(f"edge {list(verts)} has {len(verts)} vertices, expected {h.r}")
        if len(set(verts)) != len(verts):
            raise BadEdgeError(f"edge {list(verts)} repeats a vertex")
        if verts[0] < 1 or verts[-1] > h.n:
            raise BadEdgeError(f"edge {list(verts)} has a vertex outside 1..{h.n}")
        if verts in seen:
            raise DuplicateEdgeError(f"edge {list(verts)} appears twice")
        seen.add(verts)
    if not all(math.isfinite(wt) for _, wt in h.edges):
        raise BadEdgeError("edge weights must be finite")
    if not any(wt != 0.0 for _, wt in h.edges):
        raise EmptyOrZeroWeightError(
            "hypergraph has no edges or only zero-weight edges")


def _as_vector(h: WeightedHypergraph, x) -> np.ndarray:
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != h.n:
        raise DimensionMismatchError(
            f"vector of shape {arr.shape} does not match n={h.n}")
    return arr


def evaluate_polyform(h: WeightedHypergraph, x) -> float:
    """r! times the weighted sum over edges of the product of the edge's coordinates."""
    return float(kernels.form_value(h.index_array, h.weight_array,
                                    _as_vector(h, x), h.form_scale))


def gradient_polyform(h: WeightedHypergraph, x) -> np.ndarray:
    _, grad = kernels.form_value_grad(h.index_array, h.weight_array,
                                      _as_vector(h, x), h.form_scale)
    return np.asarray(grad)


def lp_norm(x, p: float) -> float:
    if not p >= 1:
        raise BadPError(f"p={p} must be at least 1")
    arr = np.asarray(x, dtype=np.float64)
    if not arr.any():
        return 0.0
    if p == 2:
        return float(np.sqrt(np.dot(arr, arr)))
    # factor out the max to keep large p from underflowing
    top = float(np.max(np.abs(arr)))
    return top * float(np.sum((np.abs(arr) / top) ** p)) ** (1.0 / p)


def check_partition(h: WeightedHypergraph, cert: PartitionCertificate) -> None:
    """Raise :class:`NotPartiteError` on the first edge with two vertices in one part."""
    if len(cert.part_of) != h.n:
        raise DimensionMismatchError(
            f"certificate covers {len(cert.part_of)} vertices, hypergraph has {h.n}")
    if any(not 1 <= c <= cert.k for c in cert.part_of):
        raise DimensionMismatchError(f"certificate parts must lie in 1..{cert.k}")
    for verts, _ in h.edges:
        seen = set()
        for v in verts:
            c = cert.part_of[v - 1]
            if c in seen:
                raise NotPartiteError(verts, c)
            seen.add(c)
