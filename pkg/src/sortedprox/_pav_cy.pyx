# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled PAV and prefix-search kernels.

Transliteration of ``_pav_py``/``_scalar``: every floating-point expression
keeps the same shape and evaluation order so both backends return identical
bits (the extension is built with FP contraction off).
"""

import numpy as np

from libc.math cimport INFINITY, fabs, log1p, pow, sqrt

RULE_WC = 0
RULE_CHI = 1
RULE_MCP_RIDGE = 2

cdef int K_L1 = 0
cdef int K_MCP = 1
cdef int K_SCAD = 2
cdef int K_LOG_SUM = 3
cdef int K_LQ = 4

cdef double ROOT_RTOL = 1e-15
cdef int ROOT_MAX_ITER = 200


cdef inline double _max(double a, double b) nogil:
    return a if a > b else b


cdef double psi_scaled(int kind, double param, double v, double lam) nogil:
    # psi for the scaled families (l1/log_sum/lq), lam = block weight sum.
    if lam == 0.0:
        return 0.0
    if kind == K_L1:
        return lam * v
    if kind == K_LOG_SUM:
        return lam * log1p(v / param)
    if v == 0.0:
        return 0.0
    return lam * pow(v, param)


cdef double dpsi_scad(double g, double z, double lam) nogil:
    if lam == 0.0:
        return 0.0
    if z <= lam:
        return lam
    if z <= g * lam:
        return (g * lam - z) / (g - 1.0)
    return 0.0


cdef double stationary_lq(double q, double y, double lam) nogil:
    cdef double lo, hi, z, znew, g, dg
    cdef int it
    if lam == 0.0:
        return y
    lo = pow(lam * q * (1.0 - q), 1.0 / (2.0 - q))
    hi = y
    z = y
    for it in range(ROOT_MAX_ITER):
        g = z - y + lam * q * pow(z, q - 1.0)
        dg = 1.0 - lam * q * (1.0 - q) * pow(z, q - 2.0)
        if g > 0.0:
            hi = z
        else:
            lo = z
        if dg <= 0.0:
            znew = 0.5 * (lo + hi)
        else:
            znew = z - g / dg
            if znew <= lo or znew >= hi:
                znew = 0.5 * (lo + hi)
        if fabs(znew - z) <= ROOT_RTOL * _max(1.0, fabs(znew)):
            return znew
        z = znew
    return z


cdef double stationary_log_sum(double eps, double y, double lam) nogil:
    cdef double disc = 0.25 * (y + eps) * (y + eps) - lam
    cdef double v
    if disc < 0.0:
        disc = 0.0
    v = 0.5 * (y - eps) + sqrt(disc)
    return v if v > 0.0 else 0.0


cdef double local_min_threshold(int kind, double param, double lam) nogil:
    cdef double eps, q, m
    if lam == 0.0:
        return 0.0
    if kind == K_LOG_SUM:
        eps = param
        if lam >= eps * eps:
            return 2.0 * sqrt(lam) - eps
        return lam / eps
    q = param
    m = pow(lam * q * (1.0 - q), 1.0 / (2.0 - q))
    return m * ((2.0 - q) / (1.0 - q))


cdef double block_candidate(int kind, double param, double ybar, double lambar) nogil:
    if lambar == 0.0:
        return ybar
    if ybar >= local_min_threshold(kind, param, lambar):
        if kind == K_LOG_SUM:
            return stationary_log_sum(param, ybar, lambar)
        return stationary_lq(param, ybar, lambar)
    return 0.0


cdef double pool_l1(double ybar, double lambar, double eta) nogil:
    cdef double v = ybar - eta * lambar
    return v if v > 0.0 else 0.0


cdef double pool_log_sum(double eps, double ybar, double lambar,
                         double eta) nogil:
    cdef double t = eta * lambar
    cdef double disc
    if ybar <= t / eps:
        return 0.0
    disc = 0.25 * (ybar + eps) * (ybar + eps) - t
    if disc < 0.0:
        disc = 0.0
    return 0.5 * (ybar - eps) + sqrt(disc)


cdef double pool_mcp(double gamma, double[:] ll, Py_ssize_t q, Py_ssize_t r,
                     double ysum, double eta, bint ridge) nogil:
    cdef Py_ssize_t n = r - q + 1
    cdef double base = n / eta + (n / gamma if ridge else 0.0)
    cdef double s = 0.0
    cdef double slope, z
    cdef Py_ssize_t k = 0
    while True:
        slope = base - k / gamma
        z = (ysum / eta - s) / slope
        if k == n or z >= gamma * ll[q + k]:
            break
        s += ll[q + k]
        k += 1
    return z if z > 0.0 else 0.0


cdef double pool_scad(double gamma, double[:] ll, Py_ssize_t q, Py_ssize_t r,
                      double ysum, double eta) nogil:
    cdef Py_ssize_t n = r - q + 1
    cdef double ybar = ysum / n
    cdef double lo, hi, z, acc
    cdef Py_ssize_t j
    cdef int it
    acc = n * (0.0 - ybar) / eta
    for j in range(q, r + 1):
        acc += dpsi_scad(gamma, 0.0, ll[j])
    if acc >= 0.0:
        return 0.0
    lo = 0.0
    hi = ybar
    for it in range(ROOT_MAX_ITER):
        z = 0.5 * (lo + hi)
        acc = n * (z - ybar) / eta
        for j in range(q, r + 1):
            acc += dpsi_scad(gamma, z, ll[j])
        if acc > 0.0:
            hi = z
        else:
            lo = z
        if hi - lo <= ROOT_RTOL * _max(1.0, hi):
            break
    return 0.5 * (lo + hi)


cdef double _pool(int rule, int kind, double param, double eta, double[:] yl,
                  double[:] ll, Py_ssize_t q, Py_ssize_t r, double ysum,
                  double lsum) nogil:
    cdef Py_ssize_t n = r - q + 1
    if rule == 1:  # RULE_CHI
        return block_candidate(kind, param, ysum / n, lsum / n)
    if rule == 2:  # RULE_MCP_RIDGE
        return pool_mcp(param, ll, q, r, ysum, eta, 1)
    if kind == K_L1:
        return pool_l1(ysum / n, lsum / n, eta)
    if kind == K_MCP:
        return pool_mcp(param, ll, q, r, ysum, eta, 0)
    if kind == K_SCAD:
        return pool_scad(param, ll, q, r, ysum, eta)
    return pool_log_sum(param, ysum / n, lsum / n, eta)


cdef inline double block_objective(int kind, double param, Py_ssize_t n,
                                   double ysum, double lsum, double ysq,
                                   double v) nogil:
    return 0.5 * (ysq - 2.0 * v * ysum) + 0.5 * n * v * v + psi_scaled(
        kind, param, v, lsum)


def pav_blocks(y, lams, int rule, int kind, double param, double eta):
    """Run the PAV sweep; return (block_starts, block_values) as arrays."""
    cdef double[:] yl = np.ascontiguousarray(y, dtype=np.float64)
    cdef double[:] ll = np.ascontiguousarray(lams, dtype=np.float64)
    cdef Py_ssize_t p = yl.shape[0]
    starts_arr = np.empty(p, dtype=np.intp)
    ysum_arr = np.empty(p, dtype=np.float64)
    lsum_arr = np.empty(p, dtype=np.float64)
    val_arr = np.empty(p, dtype=np.float64)
    cdef Py_ssize_t[:] bstart = starts_arr
    cdef double[:] bysum = ysum_arr
    cdef double[:] blsum = lsum_arr
    cdef double[:] bval = val_arr
    cdef Py_ssize_t i, t
    cdef bint first
    t = -1
    with nogil:
        for i in range(p):
            t += 1
            bstart[t] = i
            bysum[t] = yl[i]
            blsum[t] = ll[i]
            bval[t] = _pool(rule, kind, param, eta, yl, ll, i, i, yl[i], ll[i])
            if t == 0 or bval[t - 1] >= bval[t]:
                continue
            first = 1
            while t >= 1 and (bval[t - 1] < bval[t] if first
                              else bval[t - 1] <= bval[t]):
                first = 0
                bysum[t - 1] += bysum[t]
                blsum[t - 1] += blsum[t]
                t -= 1
                bval[t] = _pool(rule, kind, param, eta, yl, ll, bstart[t], i,
                                bysum[t], blsum[t])
    return starts_arr[:t + 1].copy(), val_arr[:t + 1].copy()


def dpav_run(y, lams, int kind, double param):
    """PAV prefix search (weights stepsize-folded); see the Python twin."""
    cdef double[:] yl = np.ascontiguousarray(y, dtype=np.float64)
    cdef double[:] ll = np.ascontiguousarray(lams, dtype=np.float64)
    cdef Py_ssize_t p = yl.shape[0]
    suffix_arr = np.zeros(p + 1, dtype=np.float64)
    cdef double[:] suffix = suffix_arr
    starts_arr = np.empty(p, dtype=np.intp)
    ysum_arr = np.empty(p, dtype=np.float64)
    lsum_arr = np.empty(p, dtype=np.float64)
    ysq_arr = np.empty(p, dtype=np.float64)
    val_arr = np.empty(p, dtype=np.float64)
    obj_arr = np.empty(p, dtype=np.float64)
    cdef Py_ssize_t[:] bstart = starts_arr
    cdef double[:] bysum = ysum_arr
    cdef double[:] blsum = lsum_arr
    cdef double[:] bysq = ysq_arr
    cdef double[:] bval = val_arr
    cdef double[:] bobj = obj_arr
    cdef Py_ssize_t i, t, best_k, b
    cdef double total, best_obj, v, o, snap
    cdef bint first

    with nogil:
        for i in range(p - 1, -1, -1):
            suffix[i] = suffix[i + 1] + 0.5 * yl[i] * yl[i]
    best_obj = suffix[0]
    best_k = 0
    total = 0.0
    t = -1
    with nogil:
        for i in range(p):
            v = _pool(1, kind, param, 1.0, yl, ll, i, i, yl[i], ll[i])
            o = block_objective(kind, param, 1, yl[i], ll[i], yl[i] * yl[i], v)
            t += 1
            bstart[t] = i
            bysum[t] = yl[i]
            blsum[t] = ll[i]
            bysq[t] = yl[i] * yl[i]
            bval[t] = v
            bobj[t] = o
            total += o
            if t > 0 and bval[t - 1] < bval[t]:
                first = 1
                while t >= 1 and (bval[t - 1] < bval[t] if first
                                  else bval[t - 1] <= bval[t]):
                    first = 0
                    bysum[t - 1] += bysum[t]
                    blsum[t - 1] += blsum[t]
                    bysq[t - 1] += bysq[t]
                    total -= bobj[t - 1] + bobj[t]
                    t -= 1
                    bval[t] = _pool(1, kind, param, 1.0, yl, ll, bstart[t], i,
                                    bysum[t], blsum[t])
                    bobj[t] = block_objective(kind, param, i - bstart[t] + 1,
                                              bysum[t], blsum[t], bysq[t],
                                              bval[t])
                    total += bobj[t]
            snap = total + suffix[i + 1]
            if snap < best_obj:
                best_obj = snap
                best_k = i + 1

    x = np.zeros(p, dtype=np.float64)
    if best_k > 0:
        starts, vals = pav_blocks(np.asarray(y)[:best_k],
                                  np.asarray(lams)[:best_k], 1, kind, param,
                                  1.0)
        bounds = list(starts) + [best_k]
        for b in range(len(vals)):
            x[bounds[b]:bounds[b + 1]] = vals[b]
    return x, int(best_k), float(best_obj)
