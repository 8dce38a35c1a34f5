"""Brute-force reference solvers used to certify the fast paths.

The oracles restate the penalty formulas in vectorized numpy, independently
of the scalar kernels, and minimize by exhaustive search:

* :func:`grid_scalar_prox` -- dense grid + golden-section refinement of the
  scalar objective;
* :func:`exhaustive_partition_prox` -- enumeration of every contiguous
  partition with blockwise candidate values (0 or the nonzero stationary
  point for thresholded families; the exact block prox in the weakly convex
  regime);
* :func:`grid2d_prox` -- dense feasible grid for p = 2, guarding the
  blockwise-candidate restriction itself.

Partition enumeration is depth-first in lexicographic order with feasibility
and running-objective pruning; ties keep the first partition found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _scalar
from .errors import ConfigurationError
from .penalty import PenaltyFamily, weak_convexity_modulus

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class OracleReport:
    objective: float
    argmin: np.ndarray
    gap_vs_candidate: float
    instances_checked: int


def penalty_values(family: PenaltyFamily, z, lam: float):
    """Vectorized psi(z; lam), restated directly from the family definitions."""
    z = np.asarray(z, dtype=np.float64)
    p = family.param
    if lam == 0.0:
        return np.zeros_like(z)
    if family.kind == "l1":
        return lam * z
    if family.kind == "mcp":
        return np.where(z <= p * lam, lam * z - z * z / (2.0 * p),
                        p * lam * lam / 2.0)
    if family.kind == "scad":
        mid = (2.0 * p * lam * z - z * z - lam * lam) / (2.0 * (p - 1.0))
        return np.where(z <= lam, lam * z,
                        np.where(z <= p * lam, mid, lam * lam * (p + 1.0) / 2.0))
    if family.kind == "log_sum":
        return lam * np.log1p(z / p)
    return lam * np.power(z, p)


def scalar_objective_values(family: PenaltyFamily, z, y: float, lam: float):
    """Vectorized scalar prox objective 0.5*(z - y)^2 + psi(z; lam)."""
    z = np.asarray(z, dtype=np.float64)
    return 0.5 * (z - y) ** 2 + penalty_values(family, z, lam)


def grid_scalar_prox(family: PenaltyFamily, y: float, lam: float,
                     z_max: float | None = None, step: float = 1e-4):
    """Grid minimizer of the scalar prox objective, refined by golden section.

    The grid covers {0, step, ..., z_max} (z_max defaults to y; the prox never
    exceeds y since the penalty is non-decreasing).  A golden-section pass
    shrinks the bracket around the grid argmin to step/1000.  Returns
    (argmin, objective).
    """
    if z_max is None:
        z_max = y
    if z_max < y:
        raise ConfigurationError("z_max must cover y")
    if not step > 0:
        raise ConfigurationError("step must be positive")
    grid = np.arange(0.0, z_max + 0.5 * step, step)
    if grid.size == 0:
        grid = np.array([0.0])
    if grid[-1] < z_max:
        grid = np.append(grid, z_max)
    vals = scalar_objective_values(family, grid, y, lam)
    i = int(np.argmin(vals))

    def f(z):
        return float(scalar_objective_values(family, np.array([z]), y, lam)[0])

    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, grid.size - 1)])
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > step / 1000.0:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    z = 0.5 * (a + b)
    obj, arg = min([(f(z), z), (float(vals[i]), float(grid[i]))])
    return arg, obj


def sorted_objective_value(family: PenaltyFamily, lams, eta: float, x, y) -> float:
    """Full prox objective sum_i psi(x_i; lam_i) + ||y - x||^2 / (2*eta)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    lam = np.asarray(lams, dtype=np.float64)
    pen = float(sum(penalty_values(family, np.array([xi]), float(li))[0]
                    for xi, li in zip(x, lam)))
    return pen + 0.5 * float(np.dot(y - x, y - x)) / eta


def exhaustive_partition_prox(family: PenaltyFamily, lams, y_sorted,
                              eta: float = 1.0,
                              candidate_objective: float | None = None,
                              ) -> OracleReport:
    """Global minimizer over blockwise candidate assignments, p <= 12.

    Every contiguous partition of the index range is enumerated.  Thresholded
    families outside the convex regime admit {0, nonzero stationary point}
    per block (any local minimizer is blockwise of that form); weakly convex
    regimes use the single exact block prox value.  Infeasible assignments
    (increasing somewhere) are discarded, never projected.  The reported
    objective is sum_i psi(x_i; lam_i) + ||y - x||^2 / (2*eta).
    """
    y = np.asarray(y_sorted, dtype=np.float64)
    lam = np.asarray(lams, dtype=np.float64)
    p = int(y.size)
    if p > 12:
        raise ConfigurationError("exhaustive oracle is limited to p <= 12")

    mu = weak_convexity_modulus(family, float(lam[0]))
    convex_regime = mu == 0.0 or (math.isfinite(mu) and eta * mu < 1.0)
    code, param = family.code, family.param
    ll = [float(v) for v in lam]

    def block_penalty(q, r, v):
        return sum(float(penalty_values(family, np.array([v]), ll[j])[0])
                   for j in range(q, r + 1))

    block_candidates = {}
    for q in range(p):
        ys = ls_eff = ysq = 0.0
        for r in range(q, p):
            ys += float(y[r])
            ls_eff += eta * ll[r]
            ysq += float(y[r]) * float(y[r])
            n = r - q + 1
            if convex_regime:
                vals = [_pool_convex(family, ll, q, r, ys, eta)]
            else:
                vals = [0.0]
                ybar, lbar = ys / n, ls_eff / n
                if lbar == 0.0:
                    if ybar > 0.0:
                        vals.append(ybar)
                elif ybar >= _scalar.local_min_threshold(code, param, lbar):
                    rho = _scalar.nonzero_stationary(code, param, ybar, lbar)
                    if rho > 0.0:
                        vals.append(rho)
            cands = []
            for v in sorted(set(vals)):
                quad = 0.5 * (ysq - 2.0 * v * ys + n * v * v) / eta
                cands.append((v, quad + block_penalty(q, r, v)))
            block_candidates[(q, r)] = cands

    best = {"obj": math.inf, "assign": None, "count": 0}

    def search(start, prev_value, acc, chosen):
        if start == p:
            best["count"] += 1
            if acc < best["obj"]:
                best["obj"] = acc
                best["assign"] = list(chosen)
            return
        for r in range(start, p):
            for v, obj in block_candidates[(start, r)]:
                if v <= prev_value and acc + obj < best["obj"]:
                    chosen.append((start, r, v))
                    search(r + 1, v, acc + obj, chosen)
                    chosen.pop()

    search(0, math.inf, 0.0, [])
    x = np.zeros(p, dtype=np.float64)
    for q, r, v in best["assign"]:
        x[q:r + 1] = v
    gap = math.nan
    if candidate_objective is not None:
        gap = candidate_objective - best["obj"]
    return OracleReport(objective=float(best["obj"]), argmin=x,
                        gap_vs_candidate=gap,
                        instances_checked=int(best["count"]))


def _pool_convex(family, ll, q, r, ysum, eta):
    n = r - q + 1
    ls = sum(ll[q:r + 1])
    if family.kind == "l1":
        return _scalar.pool_l1(ysum / n, ls / n, eta)
    if family.kind == "mcp":
        return _scalar.pool_mcp(family.param, ll, q, r, ysum, eta, False)
    if family.kind == "scad":
        return _scalar.pool_scad(family.param, ll, q, r, ysum, eta)
    if family.kind == "log_sum":
        return _scalar.pool_log_sum(family.param, ysum / n, ls / n, eta)
    raise ConfigurationError("no convex pooling for lq")


def grid2d_prox(family: PenaltyFamily, lams, y_sorted, z_max: float,
                n: int = 2000, eta: float = 1.0):
    """Dense feasible-grid minimizer for p = 2 (chunked to bound memory)."""
    y = np.asarray(y_sorted, dtype=np.float64)
    lam = np.asarray(lams, dtype=np.float64)
    if y.size != 2:
        raise ConfigurationError("grid2d_prox is for p = 2 only")
    axis = np.linspace(0.0, z_max, n)
    f2 = 0.5 * (axis - y[1]) ** 2 / eta + penalty_values(family, axis,
                                                         float(lam[1]))
    best_obj = math.inf
    best = (0.0, 0.0)
    chunk = 256
    for s in range(0, n, chunk):
        z1 = axis[s:s + chunk]
        f1 = 0.5 * (z1 - y[0]) ** 2 / eta + penalty_values(family, z1,
                                                           float(lam[0]))
        grid = f1[:, None] + f2[None, :]
        grid[z1[:, None] < axis[None, :]] = math.inf  # x1 >= x2 required
        i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
        if grid[i, j] < best_obj:
            best_obj = float(grid[i, j])
            best = (float(z1[i]), float(axis[j]))
    return np.array(best), best_obj


def finite_diff_check(f, fprime, z: float, h: float) -> float:
    """Relative error between fprime(z) and the central difference of f."""
    approx = (f(z + h) - f(z - h)) / (2.0 * h)
    exact = fprime(z)
    return abs(exact - approx) / max(1.0, abs(exact))
