"""Extremal values of the polynomial form on the unit l^p sphere.

The maximum is found by multi-start ascent: from each start ``x`` the
gradient is projected onto the tangent plane of the sphere, a step is taken
along it, and the result is rescaled back onto the sphere, with Armijo
backtracking on the form value. The minimum is the negated maximum of the
weight-negated hypergraph. Each returned value is the form evaluated at a
feasible witness, so maxima are lower bounds and minima upper bounds on the
true extrema.

When p equals r, stationary points of this problem are H-eigenvectors of the
hypergraph, so for even r the minimum is the smallest H-eigenvalue.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .core import WeightedHypergraph, evaluate_polyform, lp_norm, validate
from .errors import (
    BadPError,
    ConvergenceSuspectError,
    HypergraphError,
    NonFiniteError,
    WrongArityError,
    ZeroVectorError,
)

STEP_POLICIES = ("backtracking", "fixed")


@dataclass(frozen=True)
class SolverConfig:
    """Solver knobs.

    ``p=None`` means "use the hypergraph's uniformity r". ``alpha`` is the
    initial (backtracking) or constant (fixed) step, measured on the form with
    weights divided by their largest magnitude, so results do not depend on
    the overall weight scale. ``workers > 1`` runs restarts on threads; the
    reduction is by value, ties to the lowest restart index, so the result
    does not depend on scheduling.
    """

    p: float | None = None
    restarts: int = 64
    max_iters: int = 10000
    grad_tol: float = 1e-8
    step: str = "backtracking"
    alpha: float = 1.0
    shrink: float = 0.5
    armijo: float = 1e-4
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise HypergraphError("restarts must be at least 1")
        if self.max_iters < 0:
            raise HypergraphError("max_iters must be non-negative")
        if not (self.grad_tol > 0 and self.alpha > 0 and self.armijo > 0):
            raise HypergraphError("tolerances and step sizes must be positive")
        if not 0 < self.shrink < 1:
            raise HypergraphError("shrink factor must lie in (0, 1)")
        if self.step not in STEP_POLICIES:
            raise HypergraphError(f"step policy must be one of {STEP_POLICIES}")
        if self.p is not None and not self.p >= 1:
            raise BadPError(f"p={self.p} must be at least 1")

    def resolve_p(self, h: WeightedHypergraph) -> float:
        return float(h.r if self.p is None else self.p)

    def replace(self, **changes) -> "SolverConfig":
        return SolverConfig(**{**asdict(self), **changes})

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SpectralEstimate:
    kind: str
    value: float
    witness: np.ndarray
    p: float
    iterations_used: int
    restarts_converged: int
    best_restart_index: int
    restarts_run: int = 0
    total_iterations: int = 0
    status: str = "converged"
    residual: float = 0.0
    backend: str = field(default_factory=lambda: kernels.BACKEND)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = [float(v) for v in self.witness]
        return d


def project_to_sphere(x, p: float) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    nrm = lp_norm(arr, p)
    if nrm == 0.0:
        raise ZeroVectorError("cannot project the zero vector onto the unit sphere")
    return arr / nrm


def restart_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Independent per-restart generators: child ``i`` of ``SeedSequence(seed)``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]


def _run_restart(h, w, x0, p, cfg):
    x, f, iters, res, status = kernels.ascend(
        h.index_array, w, np.ascontiguousarray(x0, dtype=np.float64),
        h.form_scale, p, cfg.max_iters, cfg.grad_tol, cfg.alpha, cfg.shrink,
        cfg.armijo, cfg.step == "backtracking")
    return np.asarray(x), float(f), int(iters), float(res), int(status)


def _maximize(h: WeightedHypergraph, cfg: SolverConfig, starts, kind):
    validate(h)
    p = cfg.resolve_p(h)
    wscale = float(np.max(np.abs(h.weight_array)))
    w = np.ascontiguousarray(h.weight_array / wscale)

    extra = [np.asarray(s, dtype=np.float64) for s in (starts or [])]
    for s in extra:
        if s.shape != (h.n,):
            raise HypergraphError(f"start vector shape {s.shape} does not match n={h.n}")
    budget = 3 * cfg.restarts
    rngs = restart_rngs(cfg.seed, budget)

    def start_vector(i):
        if i < len(extra):
            return extra[i]
        return rngs[i - len(extra)].uniform(-1.0, 1.0, h.n)

    def run(i):
        return i, _run_restart(h, w, start_vector(i), p, cfg)

    results = []
    next_index = 0
    wanted = len(extra) + cfg.restarts
    limit = len(extra) + budget
    while len(results) < wanted and next_index < limit:
        batch = range(next_index, min(limit, next_index + wanted - len(results)))
        next_index = batch.stop
        if cfg.workers > 1 and len(batch) > 1:
            with ThreadPoolExecutor(cfg.workers) as pool:
                out = list(pool.map(run, batch))
        else:
            out = [run(i) for i in batch]
        results.extend(r for r in out if r[1][4] != kernels.NONFINITE)
    if not results:
        raise NonFiniteError("every restart diverged; try the backtracking step policy")

    best_i, (x, _, iters, res, status) = max(results, key=lambda r: (r[1][1], -r[0]))
    witness = project_to_sphere(x, p)
    value = evaluate_polyform(h, witness)
    done = (kernels.CONVERGED, kernels.STALLED)
    return SpectralEstimate(
        kind=kind,
        value=value,
        witness=witness,
        p=p,
        iterations_used=iters,
        restarts_converged=sum(1 for r in results if r[1][4] in done),
        best_restart_index=best_i,
        restarts_run=next_index,
        total_iterations=sum(r[1][2] for r in results),
        status=kernels.STATUS_NAMES[status],
        residual=res * wscale,
    )


def solve_max(h: WeightedHypergraph, cfg: SolverConfig = SolverConfig(),
              starts: Sequence | None = None) -> SpectralEstimate:
    """Best feasible value of the form found over all restarts (a lower bound).

    ``starts`` are extra initial vectors, run before the random restarts and
    numbered first.
    """
    est = _maximize(h, cfg, starts, "max")
    if not est.value > 0:
        raise ConvergenceSuspectError(
            f"maximum estimate {est.value} is not positive for a non-trivial hypergraph")
    return est


def solve_min(h: WeightedHypergraph, cfg: SolverConfig = SolverConfig(),
              starts: Sequence | None = None) -> SpectralEstimate:
    """Best feasible minimum (an upper bound), via the weight-negated maximum."""
    validate(h)
    est = _maximize(h.negated(), cfg, starts, "min")
    est.value = evaluate_polyform(h, est.witness)
    if not est.value < 0:
        raise ConvergenceSuspectError(
            f"minimum estimate {est.value} is not negative for a non-trivial hypergraph")
    return est


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a dense symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns,
    unsorted. Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol`` times the norm of the input.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.linalg.norm(a)) or 1.0
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * scale:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                aij = a[i, j]
                if aij == 0.0:
                    continue
                theta = (a[j, j] - a[i, i]) / (2.0 * aij)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                ci, cj = a[:, i].copy(), a[:, j].copy()
                a[:, i], a[:, j] = c * ci - s * cj, s * ci + c * cj
                ri, rj = a[i, :].copy(), a[j, :].copy()
                a[i, :], a[j, :] = c * ri - s * rj, s * ri + c * rj
                vi, vj = v[:, i].copy(), v[:, j].copy()
                v[:, i], v[:, j] = c * vi - s * vj, s * vi + c * vj
    return np.diag(a).copy(), v


def adjacency_matrix(h: WeightedHypergraph) -> np.ndarray:
    if h.r != 2:
        raise WrongArityError(f"adjacency matrix needs r=2, got r={h.r}")
    a = np.zeros((h.n, h.n))
    idx, w = h.index_array, h.weight_array
    a[idx[:, 0], idx[:, 1]] = w
    a[idx[:, 1], idx[:, 0]] = w
    return a


def exact_graph_eigen(h: WeightedHypergraph):
    """Largest and smallest adjacency eigenvalues of a weighted graph (r=2, p=2)."""
    if h.r != 2:
        raise WrongArityError(f"exact eigenvalues need r=2, got r={h.r}")
    validate(h)
    vals, vecs = jacobi_eigh(adjacency_matrix(h))
    out = []
    for kind, i in (("max", int(np.argmax(vals))), ("min", int(np.argmin(vals)))):
        vec = vecs[:, i] / np.linalg.norm(vecs[:, i])
        out.append(SpectralEstimate(
            kind=kind, value=float(vals[i]), witness=vec, p=2.0,
            iterations_used=0, restarts_converged=1, best_restart_index=0,
            restarts_run=1, status="exact", backend="jacobi"))
    return out[0], out[1]
