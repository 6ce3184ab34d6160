"""Brute-force cross-checks for tiny instances.

Nothing here calls the kernels: the form is re-expanded edge by edge in pure
Python (or with plain numpy broadcasting for batches), and gradients come
from central differences.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import WeightedHypergraph, validate
from .errors import DimensionMismatchError, HypergraphError, TooLargeError

MAX_GRID_N = 6


def exhaustive_expand(h: WeightedHypergraph, x) -> float:
    """Evaluate the form edge by edge, largest |weight| first, r! applied per edge."""
    xs = [float(v) for v in x]
    if len(xs) != h.n:
        raise DimensionMismatchError(f"vector of length {len(xs)} does not match n={h.n}")
    fact = math.factorial(h.r)
    total = 0.0
    for verts, wt in sorted(h.edges, key=lambda e: (-abs(e[1]), e[0])):
        term = fact * wt
        for v in verts:
            term *= xs[v - 1]
        total += term
    return total


def expansion_magnitude(h: WeightedHypergraph, x) -> float:
    """Sum of |terms|; the natural scale for comparing two expansions."""
    xs = [abs(float(v)) for v in x]
    return math.factorial(h.r) * sum(
        abs(wt) * math.prod(xs[v - 1] for v in verts) for verts, wt in h.edges)


def fd_gradient(h: WeightedHypergraph, x, step: float = 1e-6) -> np.ndarray:
    """Central differences of :func:`exhaustive_expand`, one coordinate at a time."""
    if not step > 0:
        raise HypergraphError("finite-difference step must be positive")
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (h.n,):
        raise DimensionMismatchError(f"vector of shape {x.shape} does not match n={h.n}")
    out = np.empty(h.n)
    for j in range(h.n):
        xp, xm = x.copy(), x.copy()
        xp[j] += step
        xm[j] -= step
        out[j] = (exhaustive_expand(h, xp) - exhaustive_expand(h, xm)) / (2 * step)
    return out


def _batch_form(h: WeightedHypergraph, X: np.ndarray) -> np.ndarray:
    """Form values for each row of ``X`` by explicit per-edge column products."""
    out = np.zeros(X.shape[0])
    for verts, wt in h.edges:
        col = np.full(X.shape[0], wt)
        for v in verts:
            col = col * X[:, v - 1]
        out += col
    return math.factorial(h.r) * out


def _compositions(total: int, parts: int) -> np.ndarray:
    """All (m_1..m_parts) of nonnegative integers summing to ``total`` (stars and bars)."""
    rows = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, row = -1, []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(total + parts - 2 - prev)
        rows.append(row)
    return np.array(rows, dtype=np.float64)


def _norm_p(X, p):
    return np.sum(np.abs(X) ** p, axis=-1) ** (1.0 / p)


def _polish(h, x, p, sign, steps):
    """Projected ascent on ``sign * form`` with finite-difference gradients."""
    x = x / _norm_p(x, p)
    f = sign * _batch_form(h, x[None, :])[0]
    step = 1.0
    eps = 1e-6
    for _ in range(steps):
        pert = np.repeat(x[None, :], 2 * h.n, axis=0)
        for j in range(h.n):
            pert[2 * j, j] += eps
            pert[2 * j + 1, j] -= eps
        vals = sign * _batch_form(h, pert)
        grad = (vals[0::2] - vals[1::2]) / (2 * eps)
        normal = np.sign(x) * np.abs(x) ** (p - 1)
        nn = float(normal @ normal)
        d = grad - (float(normal @ grad) / nn) * normal if nn > 0 else grad
        dd = float(d @ d)
        if dd < 1e-24:
            break
        while step > 1e-16:
            y = x + step * d
            y = y / _norm_p(y, p)
            fy = sign * _batch_form(h, y[None, :])[0]
            if fy >= f + 1e-4 * step * dd:
                x, f = y, fy
                step *= 2.0
                break
            step *= 0.5
        else:
            break
    return x, sign * f


@dataclass
class GridResult:
    max_lb: float
    min_ub: float
    max_witness: np.ndarray
    min_witness: np.ndarray
    grid_points: int

    def to_dict(self):
        return {"max_lb": self.max_lb, "min_ub": self.min_ub,
                "max_witness": [float(v) for v in self.max_witness],
                "min_witness": [float(v) for v in self.min_witness],
                "grid_points": self.grid_points}


def grid_extrema(h: WeightedHypergraph, p: float, resolution: int = 24,
                 keep: int = 10, polish_steps: int = 200) -> GridResult:
    """Enumerate sign patterns x compositions of ``resolution``, then polish.

    Grid points have ``|x_i|^p = m_i / resolution``, so every point lies on the
    unit sphere. The ``keep`` best points per direction are polished with
    ``polish_steps`` finite-difference projected-gradient steps.
    """
    validate(h)
    if h.n > MAX_GRID_N:
        raise TooLargeError(f"grid oracle handles n <= {MAX_GRID_N}, got n={h.n}")
    if resolution < 4:
        raise HypergraphError("resolution must be at least 4")
    mags = (_compositions(resolution, h.n) / resolution) ** (1.0 / p)
    best_hi, best_lo = [], []
    count = 0
    for signs in itertools.product((1.0, -1.0), repeat=h.n):
        X = mags * np.array(signs)
        vals = _batch_form(h, X)
        count += len(vals)
        k = min(keep, len(vals))
        hi = np.argpartition(-vals, k - 1)[:k]
        lo = np.argpartition(vals, k - 1)[:k]
        best_hi.extend((vals[i], X[i]) for i in hi)
        best_lo.extend((vals[i], X[i]) for i in lo)
    best_hi = sorted(best_hi, key=lambda t: -t[0])[:keep]
    best_lo = sorted(best_lo, key=lambda t: t[0])[:keep]

    max_val, max_x = best_hi[0]
    for _, x0 in best_hi:
        x, v = _polish(h, x0, p, 1.0, polish_steps)
        if v > max_val:
            max_val, max_x = v, x
    min_val, min_x = best_lo[0]
    for _, x0 in best_lo:
        x, v = _polish(h, x0, p, -1.0, polish_steps)
        if v < min_val:
            min_val, min_x = v, x
    return GridResult(float(max_val), float(min_val), np.asarray(max_x),
                      np.asarray(min_x), count)
