"""Pure-Python PAV and prefix-search kernels (fallback backend).

The compiled backend in ``_pav_cy`` implements the same loops with the same
floating-point expression order; the two must stay interchangeable bit for
bit.  Pooling rules:

    RULE_WC        weakly convex pooling (family-specific block prox)
    RULE_CHI       largest-local-minimizer pooling (thresholded families,
                   weights pre-folded with the stepsize)
    RULE_MCP_RIDGE convex MCP + z^2/(2*gamma) pooling (MM surrogate)
"""

from __future__ import annotations

import numpy as np

from . import _scalar

RULE_WC = 0
RULE_CHI = 1
RULE_MCP_RIDGE = 2

# Pooling-call counter, used by tests to pin the O(p) pooling bound.
POOL_CALLS = 0


def reset_pool_calls():
    global POOL_CALLS
    POOL_CALLS = 0


def _pool(rule, kind, param, eta, yl, ll, q, r, ysum, lsum):
    global POOL_CALLS
    POOL_CALLS += 1
    n = r - q + 1
    if rule == RULE_CHI:
        return _scalar.block_candidate(kind, param, ysum / n, lsum / n)
    if rule == RULE_MCP_RIDGE:
        return _scalar.pool_mcp(param, ll, q, r, ysum, eta, True)
    if kind == _scalar.L1:
        return _scalar.pool_l1(ysum / n, lsum / n, eta)
    if kind == _scalar.MCP:
        return _scalar.pool_mcp(param, ll, q, r, ysum, eta, False)
    if kind == _scalar.SCAD:
        return _scalar.pool_scad(param, ll, q, r, ysum, eta)
    if kind == _scalar.LOG_SUM:
        return _scalar.pool_log_sum(param, ysum / n, lsum / n, eta)
    raise AssertionError("no weakly convex pooling for this family")


def pav_blocks(y, lams, rule, kind, param, eta):
    """Run the PAV sweep; return (block_starts, block_values) as arrays.

    One forward pass with singletons appended in order; a strict order
    violation triggers a merge followed by backward merges on <= (ties merge
    backward, not forward).
    """
    p = len(y)
    yl = [float(v) for v in y]
    ll = [float(v) for v in lams]
    bstart = []
    bysum = []
    blsum = []
    bval = []
    for i in range(p):
        bstart.append(i)
        bysum.append(yl[i])
        blsum.append(ll[i])
        bval.append(_pool(rule, kind, param, eta, yl, ll, i, i, yl[i], ll[i]))
        t = len(bval) - 1
        if t == 0 or bval[t - 1] >= bval[t]:
            continue
        first = True
        while t >= 1 and (bval[t - 1] < bval[t] if first else bval[t - 1] <= bval[t]):
            first = False
            bysum[t - 1] += bysum[t]
            blsum[t - 1] += blsum[t]
            del bstart[t], bysum[t], blsum[t], bval[t]
            t -= 1
            bval[t] = _pool(rule, kind, param, eta, yl, ll, bstart[t], i,
                            bysum[t], blsum[t])
    return (np.asarray(bstart, dtype=np.intp), np.asarray(bval, dtype=np.float64))


def dpav_run(y, lams, kind, param):
    """PAV prefix search: best zero-padded prefix solution by objective.

    Returns (x, best_k, best_objective) where the first ``best_k`` entries of
    ``x`` are the PAV solution of the length-``best_k`` prefix and the rest are
    zero.  ``best_k = 0`` is the all-zero candidate; ties resolve to the
    smallest ``k``.  Weights must already carry the stepsize.
    """
    p = len(y)
    yl = [float(v) for v in y]
    ll = [float(v) for v in lams]
    suffix = [0.0] * (p + 1)
    for i in range(p - 1, -1, -1):
        suffix[i] = suffix[i + 1] + 0.5 * yl[i] * yl[i]

    best_obj = suffix[0]
    best_k = 0

    bstart = []
    bysum = []
    blsum = []
    bysq = []
    bval = []
    bobj = []
    total = 0.0
    for i in range(p):
        v = _pool(RULE_CHI, kind, param, 1.0, yl, ll, i, i, yl[i], ll[i])
        o = _block_objective(kind, param, 1, yl[i], ll[i], yl[i] * yl[i], v)
        bstart.append(i)
        bysum.append(yl[i])
        blsum.append(ll[i])
        bysq.append(yl[i] * yl[i])
        bval.append(v)
        bobj.append(o)
        total += o
        t = len(bval) - 1
        if t > 0 and bval[t - 1] < bval[t]:
            first = True
            while t >= 1 and (bval[t - 1] < bval[t] if first else bval[t - 1] <= bval[t]):
                first = False
                bysum[t - 1] += bysum[t]
                blsum[t - 1] += blsum[t]
                bysq[t - 1] += bysq[t]
                total -= bobj[t - 1] + bobj[t]
                del bstart[t], bysum[t], blsum[t], bysq[t], bval[t], bobj[t]
                t -= 1
                bval[t] = _pool(RULE_CHI, kind, param, 1.0, yl, ll, bstart[t], i,
                                bysum[t], blsum[t])
                bobj[t] = _block_objective(kind, param, i - bstart[t] + 1,
                                           bysum[t], blsum[t], bysq[t], bval[t])
                total += bobj[t]
        snap = total + suffix[i + 1]
        if snap < best_obj:
            best_obj = snap
            best_k = i + 1

    x = np.zeros(p, dtype=np.float64)
    if best_k > 0:
        starts, vals = pav_blocks(y[:best_k], lams[:best_k], RULE_CHI, kind,
                                  param, 1.0)
        starts = list(starts) + [best_k]
        for b in range(len(vals)):
            x[starts[b]:starts[b + 1]] = vals[b]
    return x, best_k, best_obj


def _block_objective(kind, param, n, ysum, lsum, ysq, v):
    # sum over the block of 0.5*(y_i - v)^2 + psi(v; lam_i), scaled families.
    return 0.5 * (ysq - 2.0 * v * ysum) + 0.5 * n * v * v + _scalar.psi(
        kind, param, v, lsum)
