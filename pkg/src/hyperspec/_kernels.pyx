# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the edge-list polynomial form.

Mirrors :mod:`hyperspec._kernels_py` function for function; both must follow
the same iteration so that results agree to roundoff.
"""
import numpy as np

from libc.math cimport pow, fabs, sqrt, isfinite, NAN

cdef enum:
    CONVERGED = 0
    MAX_ITERS = 1
    STALLED = 2
    NONFINITE = 3

cdef double ALPHA_MAX = 1e8
cdef double ALPHA_MIN_STEP = 1e-18
cdef double ROUNDOFF = 1e-15
cdef double CURVATURE = 0.9
cdef long STAG_WINDOW = 100
cdef double STAG_RTOL = 1e-14


cdef double _value(const long long[:, ::1] idx, const double[::1] w,
                   const double[::1] x, double scale) noexcept nogil:
    cdef Py_ssize_t m = idx.shape[0], r = idx.shape[1], e, a
    cdef double total = 0.0, prod
    for e in range(m):
        prod = 1.0
        for a in range(r):
            prod *= x[idx[e, a]]
        total += w[e] * prod
    return scale * total


cdef double _value_grad(const long long[:, ::1] idx, const double[::1] w,
                        const double[::1] x, double scale,
                        double[::1] grad) noexcept nogil:
    cdef Py_ssize_t m = idx.shape[0], r = idx.shape[1], n = x.shape[0]
    cdef Py_ssize_t e, a, b
    cdef double total = 0.0, prod, others
    for a in range(n):
        grad[a] = 0.0
    for e in range(m):
        prod = 1.0
        for a in range(r):
            prod *= x[idx[e, a]]
        total += w[e] * prod
        # leave-one-out products without division, so zero coordinates are exact
        for a in range(r):
            others = 1.0
            for b in range(r):
                if b != a:
                    others *= x[idx[e, b]]
            grad[idx[e, a]] += w[e] * others
    for a in range(n):
        grad[a] *= scale
    return scale * total


cdef double _lp_norm(const double[::1] x, double p) noexcept nogil:
    cdef Py_ssize_t i
    cdef double s = 0.0
    if p == 2.0:
        for i in range(x.shape[0]):
            s += x[i] * x[i]
        return sqrt(s)
    for i in range(x.shape[0]):
        s += pow(fabs(x[i]), p)
    return pow(s, 1.0 / p)


cdef inline double _sphere_normal(double xi, double p) noexcept nogil:
    if xi == 0.0:
        return 0.0
    if p == 2.0:
        return xi
    if xi > 0.0:
        return pow(xi, p - 1.0)
    return -pow(-xi, p - 1.0)


cdef double _tangent(const double[::1] x, const double[::1] grad, double p,
                     double[::1] d) noexcept nogil:
    """Project ``grad`` onto the tangent plane of the l^p sphere at ``x``.

    Writes the projection into ``d`` and returns its Euclidean norm.
    """
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double gi, gg = 0.0, gd = 0.0, coef, res = 0.0
    for i in range(n):
        gi = _sphere_normal(x[i], p)
        gg += gi * gi
        gd += gi * grad[i]
    coef = gd / gg if gg > 0.0 else 0.0
    for i in range(n):
        d[i] = grad[i] - coef * _sphere_normal(x[i], p)
        res += d[i] * d[i]
    return sqrt(res)


cdef double _dot(const double[::1] a, const double[::1] b) noexcept nogil:
    cdef Py_ssize_t i
    cdef double s = 0.0
    for i in range(a.shape[0]):
        s += a[i] * b[i]
    return s


cdef int _ascend(const long long[:, ::1] idx, const double[::1] w,
                 double[::1] x, double scale, double p, long max_iters,
                 double grad_tol, double alpha0, double beta, double armijo_c,
                 bint backtrack, double[::1] grad, double[::1] d,
                 double[::1] y, double[::1] gy, double[::1] dy, double[::1] xb,
                 double* f_out, long* iters_out, double* res_out) noexcept nogil:
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double nrm, f, fy = 0.0, res, ry = 0.0, dd, slope = 0.0
    cdef double alpha = alpha0, gain, floor, f_window, f_best, res_best
    cdef long iters = 0
    cdef int status = MAX_ITERS
    cdef bint accepted

    nrm = _lp_norm(x, p)
    if not (nrm > 0.0) or not isfinite(nrm):
        f_out[0] = 0.0
        iters_out[0] = 0
        res_out[0] = 0.0
        return NONFINITE
    for i in range(n):
        x[i] /= nrm
    f = _value_grad(idx, w, x, scale, grad)
    res = _tangent(x, grad, p, d)
    f_window = f
    f_best = f
    res_best = res
    for i in range(n):
        xb[i] = x[i]

    while True:
        if not isfinite(res) or not isfinite(f):
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
            for i in range(n):
                y[i] = x[i] + alpha * d[i]
            nrm = _lp_norm(y, p)
            if nrm > 0.0 and isfinite(nrm):
                for i in range(n):
                    y[i] /= nrm
                fy = _value_grad(idx, w, y, scale, gy)
                ry = _tangent(y, gy, p, dy)
                slope = _dot(dy, d)
            else:
                fy = NAN
            if not backtrack:
                accepted = isfinite(fy)
                break
            if isfinite(fy) and isfinite(ry):
                gain = armijo_c * alpha * dd
                floor = ROUNDOFF * (1.0 + fabs(f))
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
        for i in range(n):
            x[i] = y[i]
            grad[i] = gy[i]
            d[i] = dy[i]
        f = fy
        res = ry
        iters += 1
        if f > f_best:
            f_best = f
            res_best = res
            for i in range(n):
                xb[i] = x[i]
        if iters % STAG_WINDOW == 0:
            if backtrack and f - f_window <= STAG_RTOL * (1.0 + fabs(f)):
                status = STALLED
                break
            f_window = f
        if backtrack:
            alpha = alpha / beta
            if alpha > ALPHA_MAX:
                alpha = ALPHA_MAX

    if status != NONFINITE and f < f_best:
        # roundoff-level acceptances can drift below an earlier iterate
        for i in range(n):
            x[i] = xb[i]
        f = f_best
        res = res_best
    f_out[0] = f
    iters_out[0] = iters
    res_out[0] = res
    return status


def form_value(const long long[:, ::1] idx, const double[::1] w,
               const double[::1] x, double scale):
    return _value(idx, w, x, scale)


def form_value_grad(const long long[:, ::1] idx, const double[::1] w,
                    const double[::1] x, double scale):
    grad = np.empty(x.shape[0], dtype=np.float64)
    cdef double[::1] g = grad
    cdef double f = _value_grad(idx, w, x, scale, g)
    return f, grad


def tangent_residual(const double[::1] x, const double[::1] grad, double p):
    d = np.empty(x.shape[0], dtype=np.float64)
    cdef double[::1] dv = d
    return _tangent(x, grad, p, dv)


def ascend(const long long[:, ::1] idx, const double[::1] w, x0, double scale,
           double p, long max_iters, double grad_tol, double alpha0,
           double beta, double armijo_c, bint backtrack):
    """Projected ascent from ``x0``; returns (x, value, iters, residual, status)."""
    x = np.array(x0, dtype=np.float64, copy=True)
    cdef Py_ssize_t n = x.shape[0]
    grad = np.empty(n, dtype=np.float64)
    d = np.empty(n, dtype=np.float64)
    y = np.empty(n, dtype=np.float64)
    gy = np.empty(n, dtype=np.float64)
    dy = np.empty(n, dtype=np.float64)
    xb = np.empty(n, dtype=np.float64)
    cdef double[::1] xv = x, gv = grad, dv = d, yv = y, gyv = gy, dyv = dy, xbv = xb
    cdef double f = 0.0, res = 0.0
    cdef long iters = 0
    cdef int status
    with nogil:
        status = _ascend(idx, w, xv, scale, p, max_iters, grad_tol, alpha0,
                         beta, armijo_c, backtrack, gv, dv, yv, gyv, dyv, xbv, &f, &iters,
                         &res)
    return x, f, iters, res, status
