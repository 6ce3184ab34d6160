"""Pure numpy fallback for :mod:`hyperspec._kernels`.

Same functions, same iteration, same status codes. Used when the compiled
extension is missing or ``HYPERSPEC_PURE_PYTHON=1`` is set.
"""
import math

import numpy as np

CONVERGED, MAX_ITERS, STALLED, NONFINITE = 0, 1, 2, 3

ALPHA_MAX = 1e8
ALPHA_MIN_STEP = 1e-18
ROUNDOFF = 1e-15
CURVATURE = 0.9
STAG_WINDOW = 100
STAG_RTOL = 1e-14


def form_value(idx, w, x, scale):
    if idx.shape[0] == 0:
        return 0.0
    return float(scale * np.dot(w, np.prod(x[idx], axis=1)))


def form_value_grad(idx, w, x, scale):
    n = x.shape[0]
    grad = np.zeros(n)
    if idx.shape[0] == 0:
        return 0.0, grad
    xs = x[idx]
    value = float(scale * np.dot(w, np.prod(xs, axis=1)))
    r = idx.shape[1]
    for a in range(r):
        others = np.prod(np.delete(xs, a, axis=1), axis=1)
        grad += np.bincount(idx[:, a], weights=w * others, minlength=n)
    return value, scale * grad


def _lp_norm(x, p):
    if p == 2.0:
        return math.sqrt(float(np.dot(x, x)))
    return float(np.sum(np.abs(x) ** p)) ** (1.0 / p)


def _sphere_normal(x, p):
    if p == 2.0:
        return x
    return np.sign(x) * np.abs(x) ** (p - 1.0)


def _tangent(x, grad, p):
    g = _sphere_normal(x, p)
    gg = float(np.dot(g, g))
    coef = float(np.dot(g, grad)) / gg if gg > 0.0 else 0.0
    d = grad - coef * g
    return d, math.sqrt(float(np.dot(d, d)))


def tangent_residual(x, grad, p):
    return _tangent(np.asarray(x, float), np.asarray(grad, float), p)[1]


def ascend(idx, w, x0, scale, p, max_iters, grad_tol, alpha0, beta, armijo_c,
           backtrack):
    x = np.array(x0, dtype=np.float64, copy=True)
    nrm = _lp_norm(x, p)
    if not (nrm > 0.0) or not math.isfinite(nrm):
        return x, 0.0, 0, 0.0, NONFINITE
    x /= nrm
    f, grad = form_value_grad(idx, w, x, scale)
    d, res = _tangent(x, grad, p)
    alpha = alpha0
    iters = 0
    f_window = f
    x_best, f_best, res_best = x, f, res
    while True:
        if not math.isfinite(res) or not math.isfinite(f):
            status = NONFINITE
            break
        if res < grad_tol:
            status = CONVERGED
            break
        if iters >= max_iters:
            status = MAX_ITERS
            break
        dd = res * res
        accepted = False
        while True:
            with np.errstate(over="ignore", invalid="ignore"):
                y = x + alpha * d
                nrm = _lp_norm(y, p)
            if nrm > 0.0 and math.isfinite(nrm):
                y /= nrm
                fy, gy = form_value_grad(idx, w, y, scale)
                dy, ry = _tangent(y, gy, p)
                slope = float(np.dot(dy, d))
            else:
                fy = ry = math.nan
            if not backtrack:
                accepted = math.isfinite(fy)
                break
            if math.isfinite(fy) and math.isfinite(ry):
                gain = armijo_c * alpha * dd
                floor = ROUNDOFF * (1.0 + abs(f))
                if gain >= floor:
                    accepted = fy >= f + gain and slope >= -CURVATURE * dd
                else:
                    # values no longer resolve the step: require a non-negative
                    # tangent slope along d at y instead
                    accepted = fy >= f - floor and slope >= 0.0
                if accepted:
                    break
            alpha *= beta
            if alpha * res < ALPHA_MIN_STEP:
                break
        if not accepted:
            status = STALLED if backtrack else NONFINITE
            break
        x, grad, d, f, res = y, gy, dy, fy, ry
        iters += 1
        if f > f_best:
            x_best, f_best, res_best = x, f, res
        if iters % STAG_WINDOW == 0:
            if backtrack and f - f_window <= STAG_RTOL * (1.0 + abs(f)):
                status = STALLED
                break
            f_window = f
        if backtrack:
            alpha = min(alpha / beta, ALPHA_MAX)
    if status != NONFINITE and f < f_best:
        # roundoff-level acceptances can drift below an earlier iterate
        x, f, res = x_best, f_best, res_best
    return x, f, iters, res, status
