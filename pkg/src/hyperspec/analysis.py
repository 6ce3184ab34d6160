"""Closed forms and bound checks built on the solver.

The ratio checked by :func:`hoffman_check` is ``lam_max(G) / lam_min(G)``
against the same ratio for the complete r-graph on k vertices; both sides
are negative, and the bound says the hypergraph's ratio is never below the
complete graph's when G is k-partite, r is even and p >= r.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import (
    PartitionCertificate,
    WeightedHypergraph,
    check_partition,
    validate,
)
from .errors import (
    BadArityError,
    BadOrderError,
    BadPError,
    TheoremInapplicableError,
    WrongArityError,
)
from .generators import BlowupSpec, complete_rgraph, counterexample_4graph, kpartite_blowup
from .solver import SolverConfig, SpectralEstimate, solve_max, solve_min

HOLDS = "holds"
VIOLATED_WITHIN_TOL = "violated_within_tol"
VIOLATED = "violated"


def falling_factorial(k: int, r: int) -> int:
    return math.prod(range(k - r + 1, k + 1))


def kkr_lambda_max(k: int, r: int, p: float) -> float:
    """Maximum of the form of K_k^r on the unit l^p sphere: k^(1-r/p) (k-1)...(k-r+1).

    Attained at the constant vector; (k-1)...(k-r+1) is the falling factorial
    of k-1 of length r-1.
    """
    if not (k >= r >= 2):
        raise BadArityError(f"need k >= r >= 2, got k={k}, r={r}")
    if not p >= 1:
        raise BadPError(f"p={p} must be at least 1")
    return k ** (1.0 - r / p) * falling_factorial(k - 1, r - 1)


def theorem_applicable(r: int, p: float, k: int | None = None) -> bool:
    return r % 2 == 0 and p >= r and (k is None or k >= r)


def _estimate_summary(est: SpectralEstimate | None, source: str) -> dict:
    if est is None:
        return {"source": source}
    return {"source": source, "value": est.value, "restarts_run": est.restarts_run,
            "restarts_converged": est.restarts_converged,
            "best_restart_index": est.best_restart_index, "status": est.status}


@dataclass
class BoundReport:
    p: float
    k: int
    r: int
    lam_max: float
    lam_min: float
    kkr_max: float
    kkr_min: float
    lhs: float
    rhs: float
    slack: float
    tol: float
    valid: bool
    verdict: str | None
    escalated: bool = False
    provenance: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


_kkr_min_cache: dict = {}


def kkr_lambda_min(k: int, r: int, p: float, cfg: SolverConfig) -> SpectralEstimate:
    """Solver estimate of the minimum for K_k^r; no closed form is known."""
    key = (k, r, float(p), cfg.replace(p=float(p)))
    if key not in _kkr_min_cache:
        h, _ = complete_rgraph(k, r)
        _kkr_min_cache[key] = solve_min(h, cfg.replace(p=float(p)))
    return _kkr_min_cache[key]


def _verdict(slack, tol):
    if slack >= -tol:
        return HOLDS
    if slack >= -10 * tol:
        return VIOLATED_WITHIN_TOL
    return VIOLATED


def hoffman_check(h: WeightedHypergraph, cert: PartitionCertificate, p: float | None = None,
                  cfg: SolverConfig = SolverConfig(), tol: float | None = None) -> BoundReport:
    """Compare the spectral ratio of a k-partite hypergraph with that of K_k^r.

    ``tol`` defaults to ``1e-5 * max(1, |rhs|)``. When the first pass misses by
    more than ``tol`` the four solves are repeated once with 8x the restarts.
    Verdicts: ``holds`` (slack >= -tol), ``violated_within_tol``
    (-10 tol <= slack < -tol, most likely non-convergence), ``violated``.
    """
    validate(h)
    p = float(h.r if p is None else p)
    k = cert.k
    if h.r % 2:
        raise TheoremInapplicableError(f"r={h.r} is odd; the bound is stated for even r")
    if k < h.r:
        raise TheoremInapplicableError(f"k={k} parts is fewer than r={h.r}")
    if p < h.r:
        raise TheoremInapplicableError(f"p={p} is below r={h.r}")
    check_partition(h, cert)

    def compute(c):
        c = c.replace(p=p)
        hi = solve_max(h, c)
        lo = solve_min(h, c)
        kmin = kkr_lambda_min(k, h.r, p, c)
        return hi, lo, kmin

    kmax = kkr_lambda_max(k, h.r, p)
    hi, lo, kmin = compute(cfg)
    escalated = False
    report = _bound_report(h, k, p, hi, lo, kmax, kmin, tol)
    if report.valid and report.slack < -report.tol:
        escalated = True
        hi, lo, kmin = compute(cfg.replace(restarts=8 * cfg.restarts))
        report = _bound_report(h, k, p, hi, lo, kmax, kmin, tol)
    report.escalated = escalated
    return report


def _bound_report(h, k, p, hi, lo, kmax, kmin, tol):
    valid = lo.value < 0 and kmin.value < 0
    lhs = hi.value / lo.value if valid else math.nan
    rhs = kmax / kmin.value if valid else math.nan
    slack = lhs - rhs
    if tol is None:
        tol = 1e-5 * max(1.0, abs(rhs)) if valid else 1e-5
    return BoundReport(
        p=p, k=k, r=h.r, lam_max=hi.value, lam_min=lo.value, kkr_max=kmax,
        kkr_min=kmin.value, lhs=lhs, rhs=rhs, slack=slack, tol=tol, valid=valid,
        verdict=_verdict(slack, tol) if valid else None,
        provenance={
            "lam_max": _estimate_summary(hi, "solver"),
            "lam_min": _estimate_summary(lo, "solver"),
            "kkr_max": {"source": "closed_form", "value": kmax},
            "kkr_min": _estimate_summary(kmin, "solver"),
        })


@dataclass
class BlowupReport:
    k: int
    r: int
    t: int
    p: float
    factor: float
    lam_max: float
    lam_min: float
    kkr_max: float
    kkr_max_solver: float
    kkr_min: float
    max_deviation: float
    min_deviation: float

    def to_dict(self):
        return asdict(self)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def blowup_equality_check(k: int, r: int, t: int, p: float,
                          cfg: SolverConfig = SolverConfig()) -> BlowupReport:
    """Relative deviations of both blow-up scaling identities.

    Expected: extrema of the t-fold regular blow-up are ``t^(r - r/p)`` times
    those of K_k^r. The max side is compared against the closed form, the
    min side against a solver estimate for K_k^r.
    """
    spec = BlowupSpec(k, r, t)
    if not p >= 1:
        raise BadPError(f"p={p} must be at least 1")
    c = cfg.replace(p=float(p))
    g, _ = kpartite_blowup(spec)
    kk, _ = complete_rgraph(k, r)
    factor = t ** (r - r / p)
    hi, lo = solve_max(g, c), solve_min(g, c)
    kmax = kkr_lambda_max(k, r, p)
    kmax_solver = solve_max(kk, c).value
    kmin = kkr_lambda_min(k, r, p, c).value
    return BlowupReport(
        k=k, r=r, t=t, p=float(p), factor=factor, lam_max=hi.value, lam_min=lo.value,
        kkr_max=kmax, kkr_max_solver=kmax_solver, kkr_min=kmin,
        max_deviation=_rel(hi.value, factor * kmax),
        min_deviation=_rel(lo.value, factor * kmin))


def _check_counterexample_args(n, p):
    if n < 2 or n % 2:
        raise BadOrderError(f"n={n} must be even and at least 2")
    if not p >= 2:
        raise BadPError(f"p={p} must be at least 2 for this family")


def counterexample_sr(n: int, p: float) -> float:
    """Exact maximum for the 2-chromatic 4-graph family: 4! C(n,2)^2 / (2n)^(4/p)."""
    _check_counterexample_args(n, p)
    return 24.0 * math.comb(n, 2) ** 2 / (2 * n) ** (4.0 / p)


def counterexample_min_lower_bound(n: int, p: float) -> float:
    """Analytic lower bound on the minimum: -4! 2 n^3 / (2n)^(4/p)."""
    _check_counterexample_args(n, p)
    return -24.0 * 2 * n ** 3 / (2 * n) ** (4.0 / p)


def counterexample_min_construction(n: int, p: float):
    """Feasible point with the first n/2 vertices of A negative, all else positive.

    Returns ``(value, witness)``; value = -4! (n/2) C(n,2) (2n)^(-4/p).
    """
    _check_counterexample_args(n, p)
    mag = (2 * n) ** (-1.0 / p)
    y = np.full(2 * n, mag)
    y[: n // 2] = -mag
    value = -24.0 * (n / 2) * math.comb(n, 2) * (2 * n) ** (-4.0 / p)
    return value, y


@dataclass
class SweepRow:
    n: int
    lam_max: float
    lam_max_solver: float
    lam_min: float
    construction: float
    lower_bound: float
    ratio: float
    growth: float | None

    def to_dict(self):
        return asdict(self)


def ratio_sweep(n_list, p: float, cfg: SolverConfig = SolverConfig()) -> list[SweepRow]:
    """Spectral ratio max/|min| across the counterexample family.

    The max comes from the closed form (the solver value is kept alongside);
    the min solver is started from the analytic construction in addition to
    its random restarts.
    """
    for n in n_list:
        _check_counterexample_args(n, p)
    c = cfg.replace(p=float(p))
    rows: list[SweepRow] = []
    for n in n_list:
        h = counterexample_4graph(n)
        lam = counterexample_sr(n, p)
        cval, cwit = counterexample_min_construction(n, p)
        lo = solve_min(h, c, starts=[cwit])
        ratio = lam / abs(lo.value)
        growth = ratio / rows[-1].ratio if rows else None
        rows.append(SweepRow(
            n=n, lam_max=lam, lam_max_solver=solve_max(h, c).value, lam_min=lo.value,
            construction=cval, lower_bound=counterexample_min_lower_bound(n, p),
            ratio=ratio, growth=growth))
    return rows


@dataclass
class OddSymmetryReport:
    r: int
    p: float
    lam_max: float
    lam_min: float
    deviation: float

    def to_dict(self):
        return asdict(self)


def odd_r_symmetry_check(h: WeightedHypergraph, p: float | None = None,
                         cfg: SolverConfig = SolverConfig()) -> OddSymmetryReport:
    """For odd r the form is odd in x, so min = -max; report |max + min| / max."""
    validate(h)
    if h.r % 2 == 0:
        raise WrongArityError(f"r={h.r} is even; the max/min antisymmetry needs odd r")
    c = cfg.replace(p=float(h.r if p is None else p))
    hi, lo = solve_max(h, c), solve_min(h, c)
    return OddSymmetryReport(h.r, c.p, hi.value, lo.value,
                             abs(hi.value + lo.value) / abs(hi.value))
