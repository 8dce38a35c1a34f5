"""Vector proximal operator of sorted penalties.

Pipeline: strip signs and sort magnitudes (:func:`reduce`), solve the
isotonic-constrained problem on the sorted representative, then undo the
reduction (:func:`restore`).  Weakly convex penalties at a small enough
stepsize go through the exact PAV path; thresholded families (log-sum, lq)
outside that regime go through the PAV prefix search (:func:`dpav`), which
returns the best zero-tail completion of the PAV prefix solutions.

All functions are pure with respect to their inputs; results are immutable by
convention and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _scalar, backend, isotonic
from .errors import DomainError, RegimeError, UnsupportedFamilyError
from .penalty import PenaltyFamily, weak_convexity_modulus

_VERIFY_TOL = 1e-9


@dataclass
class SortedPenalty:
    """A penalty family, a non-increasing weight sequence and a stepsize."""

    family: PenaltyFamily
    lams: np.ndarray
    eta: float = 1.0

    def __post_init__(self):
        lams = np.ascontiguousarray(self.lams, dtype=np.float64)
        if lams.ndim != 1 or lams.size == 0:
            raise DomainError("lams must be a nonempty 1-d array")
        if np.any(np.diff(lams) > 0) or lams[-1] < 0:
            raise DomainError("lams must be non-increasing with last entry >= 0")
        if not self.eta > 0:
            raise DomainError("eta must be positive")
        self.lams = lams
        self.eta = float(self.eta)

    @property
    def p(self) -> int:
        return self.lams.size

    @property
    def modulus(self) -> float:
        return weak_convexity_modulus(self.family, float(self.lams[0]))

    @property
    def weakly_convex_regime(self) -> bool:
        """True when the prox problem is convex at this stepsize."""
        mu = self.modulus
        return mu == 0.0 or (math.isfinite(mu) and self.eta * mu < 1.0)

    @cached_property
    def sequence_condition_ok(self) -> bool:
        """Cached weight-sequence check backing the prefix-search guarantee."""
        if not self.family.is_thresholded:
            return True
        return check_sequence_condition(self.family, self.eta * self.lams)


@dataclass
class ProxResult:
    """Prox point with diagnostics on the sorted representative."""

    x: np.ndarray
    objective: float
    partition: isotonic.BlockPartition
    dpav_winner_index: int | None = None
    sequence_condition_warning: bool = False


def reduce(y):
    """Split a vector into signs, sorting permutation and sorted magnitudes.

    Returns ``(signs, order, y_sorted)`` with ``y_sorted = |y|[order]``
    non-increasing.  The sort is stable (ties keep original index order) and
    zeros get sign +1, so the decomposition is deterministic.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise DomainError("y must be a 1-d vector")
    if np.isnan(y).any():
        raise DomainError("NaN input")
    signs = np.where(y < 0, -1.0, 1.0)
    yabs = np.abs(y)
    order = np.argsort(-yabs, kind="stable")
    return signs, order, yabs[order]


def restore(signs, order, x_sorted):
    """Undo :func:`reduce`: scatter back to original positions, apply signs."""
    x_sorted = np.asarray(x_sorted, dtype=np.float64)
    if x_sorted.shape != order.shape:
        raise DomainError("dimension mismatch between order and x_sorted")
    out = np.empty_like(x_sorted)
    out[order] = x_sorted
    return signs * out


def penalty_sum(family: PenaltyFamily, z, lams) -> float:
    """Vectorized sum_i psi(z_i; lam_i) for nonnegative z."""
    z = np.asarray(z, dtype=np.float64)
    lam = np.asarray(lams, dtype=np.float64)
    p = family.param
    if family.kind == "l1":
        return float(np.dot(lam, z))
    if family.kind == "mcp":
        return float(np.sum(np.where(z <= p * lam, lam * z - z * z / (2.0 * p),
                                     p * lam * lam / 2.0)))
    if family.kind == "scad":
        mid = (2.0 * p * lam * z - z * z - lam * lam) / (2.0 * (p - 1.0))
        return float(np.sum(np.where(z <= lam, lam * z,
                                     np.where(z <= p * lam, mid,
                                              lam * lam * (p + 1.0) / 2.0))))
    if family.kind == "log_sum":
        return float(np.sum(lam * np.log1p(z / p)))
    return float(np.sum(lam * np.power(z, p)))


def sorted_objective(penalty: SortedPenalty, x_sorted, y_sorted) -> float:
    """Prox objective sum_i psi(x_i; lam_i) + ||y - x||^2 / (2*eta)."""
    x = np.asarray(x_sorted, dtype=np.float64)
    y = np.asarray(y_sorted, dtype=np.float64)
    pen = penalty_sum(penalty.family, x, penalty.lams)
    return pen + 0.5 * float(np.dot(y - x, y - x)) / penalty.eta


def prox(penalty: SortedPenalty, y) -> ProxResult:
    """Proximal point of the sorted penalty at y.

    Weakly convex regime (eta below the inverse modulus): exact solution via
    PAV.  Thresholded families outside that regime: prefix-search solution, a
    local minimizer drawn from the candidate set containing every global
    minimizer under the sequence condition.  MCP/SCAD beyond their convex
    stepsize are refused.
    """
    signs, order, ysort = reduce(y)
    if ysort.size != penalty.p:
        raise DomainError("y and lams must have the same length")
    fam = penalty.family
    if penalty.weakly_convex_regime:
        part = isotonic.pav(ysort, penalty.lams,
                            isotonic.weakly_convex_rule(fam, penalty.eta))
        xs = isotonic.flatten(part)
        winner = None
        warning = False
    else:
        if not fam.is_thresholded:
            raise RegimeError(
                f"eta={penalty.eta} exceeds the convex-prox stepsize for "
                f"{fam.kind}; only log_sum and lq support the nonconvex path"
            )
        lam_eff = penalty.eta * penalty.lams
        xs, winner, _ = backend.dpav_run(ysort, lam_eff, fam.code, fam.param)
        part = isotonic.partition_from_values(xs, ysort, lam_eff)
        warning = not penalty.sequence_condition_ok
    obj = sorted_objective(penalty, xs, ysort)
    return ProxResult(x=restore(signs, order, xs), objective=obj,
                      partition=part, dpav_winner_index=winner,
                      sequence_condition_warning=warning)


def dpav(family: PenaltyFamily, lams, y_sorted, *,
         sequence_condition_ok: bool | None = None) -> ProxResult:
    """PAV prefix search on a sorted nonnegative vector (weights stepsize-folded).

    Runs PAV left to right, snapshotting the prefix solutions, zero-pads each
    to full length (the empty prefix, the all-zero vector, is candidate 0) and
    keeps the candidate with the smallest objective; ties resolve to the
    smallest prefix length.  The result is reported on the sorted
    representative.
    """
    if not family.is_thresholded:
        raise UnsupportedFamilyError(
            f"prefix search needs a log_sum or lq penalty, not {family.kind}"
        )
    y, lams = isotonic._validate_inputs(y_sorted, lams)
    xs, winner, _ = backend.dpav_run(y, lams, family.code, family.param)
    part = isotonic.partition_from_values(xs, y, lams)
    penalty = SortedPenalty(family, lams, eta=1.0)
    if sequence_condition_ok is None:
        sequence_condition_ok = penalty.sequence_condition_ok
    return ProxResult(x=xs, objective=sorted_objective(penalty, xs, y),
                      partition=part, dpav_winner_index=winner,
                      sequence_condition_warning=not sequence_condition_ok)


def verify_local_minimizer(family: PenaltyFamily, lams, y_sorted, x_sorted,
                           tol: float = _VERIFY_TOL):
    """Check the local-minimizer certificate of a feasible sorted point.

    On each maximal constant block the value must be a local minimizer of the
    block scalar objective (0 or the largest local minimizer), and every split
    of the block must leave the left part on a rising slope and the right part
    on a falling slope.  The split values must also satisfy the two admissible
    orderings of the block candidates.  For a zero block the feasible moves
    lift leading sub-blocks only, so every prefix objective must rise at 0;
    infinite slopes at 0 (lq) count as rising.

    Returns ``(ok, violations)`` with human-readable violation records.
    """
    if not family.is_thresholded:
        raise UnsupportedFamilyError(
            f"the certificate applies to log_sum and lq penalties, not {family.kind}"
        )
    y = np.asarray(y_sorted, dtype=np.float64)
    lam = np.asarray(lams, dtype=np.float64)
    x = np.asarray(x_sorted, dtype=np.float64)
    if np.any(np.diff(x) > 1e-12) or (x.size and x[-1] < -1e-12):
        raise DomainError("x_sorted must be non-increasing and nonnegative")
    code, param = family.code, family.param

    ycum = np.concatenate(([0.0], np.cumsum(y)))
    lcum = np.concatenate(([0.0], np.cumsum(lam)))

    def means(q, r):
        n = r - q + 1
        return (ycum[r + 1] - ycum[q]) / n, (lcum[r + 1] - lcum[q]) / n

    def chi_of(q, r):
        yb, lb = means(q, r)
        return _scalar.block_candidate(code, param, yb, lb)

    def slope(q, r, z):
        yb, lb = means(q, r)
        if z == 0.0:
            d0 = _scalar.dpsi_at_zero(code, param, lb)
            return math.inf if math.isinf(d0) else d0 - yb
        return z - yb + _scalar.dpsi(code, param, z, lb)

    violations = []
    blocks = isotonic.partition_from_values(x, y, lam).blocks
    for b in blocks:
        q, r, u = b.start, b.end, b.value
        if u > tol:
            cb = chi_of(q, r)
            if abs(u - cb) > tol * max(1.0, abs(cb)):
                violations.append(
                    f"block [{q},{r}]: value {u} is neither 0 nor the block "
                    f"candidate {cb}")
                continue
            for j in range(q, r):
                s_left = slope(q, j, u)
                s_right = slope(j + 1, r, u)
                if s_left < -tol or s_right > tol:
                    violations.append(
                        f"block [{q},{r}] split at {j}: slopes "
                        f"({s_left}, {s_right}) allow a descent")
                cl, cr = chi_of(q, j), chi_of(j + 1, r)
                between = cl <= cb + tol and cb <= cr + tol
                above = cl >= cr - tol and cr >= cb - tol
                if not (between or above):
                    violations.append(
                        f"block [{q},{r}] split at {j}: candidate ordering "
                        f"({cl}, {cb}, {cr}) inadmissible")
        else:
            # feasible moves lift a leading sub-block: check every prefix
            for j in range(q, r + 1):
                if slope(q, j, 0.0) < -tol:
                    violations.append(
                        f"block [{q},{r}]: objective of the leading sub-block "
                        f"[{q},{j}] descends away from 0")
    return len(violations) == 0, violations


def check_sequence_condition(family: PenaltyFamily, lams) -> bool:
    """Check the weight-sequence condition behind the prefix-search guarantee.

    For every block and every leading sub-block, the nonzero stationary point
    at the global-threshold input of the block must dominate the sub-block's
    concavity boundary.  For lq a concave, non-increasing, nonnegative
    sequence is sufficient and short-circuits; otherwise the inequality is
    evaluated directly over all O(p^2) block pairs (the sub-block maximum is
    attained at the leading index since prefix means of a non-increasing
    sequence are non-increasing).
    """
    if not family.is_thresholded:
        raise UnsupportedFamilyError(
            f"the sequence condition applies to log_sum and lq penalties, "
            f"not {family.kind}")
    lam = np.asarray(lams, dtype=np.float64)
    if np.any(np.diff(lam) > 0) or lam[-1] < 0:
        return False
    code, param = family.code, family.param
    if family.kind == "lq" and (
            lam.size < 3
            or np.all(np.diff(lam, 2) <= 1e-12 * max(1.0, lam[0]))):
        return True
    p = lam.size
    tol = 1e-9
    for q in range(p):
        seg_means = np.cumsum(lam[q:]) / np.arange(1, p - q + 1)
        # running max over leading sub-blocks of the concavity boundary
        rhs = np.maximum.accumulate(
            np.array([_scalar.concavity_boundary(code, param, v)
                      for v in seg_means]))
        for ridx, lb in enumerate(seg_means):
            if lb == 0.0:
                continue
            t = _scalar.global_min_threshold(code, param, lb)
            lhs = _scalar.nonzero_stationary(code, param, t, lb)
            if lhs < rhs[ridx] - tol * max(1.0, rhs[ridx]):
                return False
    return True
