"""Block partitions and the pool-adjacent-violators engine.

The PAV sweep works on a sorted nonnegative input and a non-increasing weight
sequence.  It is parameterized by a pooling rule that assigns each merged
block its scalar value:

* :func:`weakly_convex_rule` -- block prox of the averaged penalty (exact for
  weakly convex families when ``eta`` is below the inverse modulus);
* :func:`nonconvex_rule` -- largest local minimizer of the block scalar
  objective (0 below the block threshold), for log-sum/lq with the stepsize
  already folded into the weights;
* :func:`mm_surrogate_rule` -- block prox of the convex MCP + z^2/(2*gamma)
  surrogate penalty used by the MM baseline solver.

A PAV run owns its partition state; runs on distinct inputs are independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _scalar, backend
from .errors import DomainError, RegimeError, UnsupportedFamilyError
from .penalty import PenaltyFamily, weak_convexity_modulus


@dataclass
class Block:
    """Contiguous index range [start, end] (inclusive) with cached sums."""

    start: int
    end: int
    value: float
    y_sum: float
    lam_sum: float

    @property
    def size(self) -> int:
        return self.end - self.start + 1

    @property
    def y_mean(self) -> float:
        return self.y_sum / self.size

    @property
    def lam_mean(self) -> float:
        return self.lam_sum / self.size


@dataclass
class BlockPartition:
    """Ordered blocks covering [0, p); values strictly decreasing after PAV."""

    blocks: list
    p: int


@dataclass(frozen=True)
class PoolingRule:
    rule: int
    family: PenaltyFamily
    eta: float


def weakly_convex_rule(family: PenaltyFamily, eta: float) -> PoolingRule:
    if family.kind == "lq":
        raise UnsupportedFamilyError("lq has no weakly convex pooling")
    return PoolingRule(backend.RULE_WC, family, float(eta))


def nonconvex_rule(family: PenaltyFamily) -> PoolingRule:
    if not family.is_thresholded:
        raise UnsupportedFamilyError(
            f"nonconvex pooling needs a log_sum or lq penalty, not {family.kind}"
        )
    return PoolingRule(backend.RULE_CHI, family, 1.0)


def mm_surrogate_rule(gamma: float, eta: float) -> PoolingRule:
    return PoolingRule(backend.RULE_MCP_RIDGE, PenaltyFamily.mcp(gamma), float(eta))


def pool_weakly_convex(block: Block, family: PenaltyFamily, eta: float,
                       lams: np.ndarray | None = None) -> float:
    """Block prox of the averaged penalty (argmin over the nonnegative reals).

    MCP and SCAD pooling needs the individual weights inside the block, so the
    shared weight array must be passed for those families.
    """
    if family.kind == "log_sum":
        # the block problem stays convex up to and including the boundary
        if eta * weak_convexity_modulus(family, block.lam_mean) > 1.0:
            raise RegimeError("eta*mu > 1: use the nonconvex pooling rule")
        return _scalar.pool_log_sum(family.param, block.y_mean, block.lam_mean, eta)
    if family.kind == "l1":
        return _scalar.pool_l1(block.y_mean, block.lam_mean, eta)
    if family.kind in ("mcp", "scad"):
        if eta * weak_convexity_modulus(family, 1.0) >= 1.0:
            raise RegimeError("eta*mu >= 1: stepsize too large for this penalty")
        if lams is None:
            raise DomainError("mcp/scad pooling needs the shared weight array")
        ll = [float(v) for v in lams]
        if family.kind == "mcp":
            return _scalar.pool_mcp(family.param, ll, block.start, block.end,
                                    block.y_sum, eta, False)
        return _scalar.pool_scad(family.param, ll, block.start, block.end,
                                 block.y_sum, eta)
    raise UnsupportedFamilyError("lq has no weakly convex pooling")


def pool_nonconvex(block: Block, family: PenaltyFamily) -> float:
    """Largest local minimizer of the block scalar objective.

    Returns 0 when the block mean input sits below the block's
    local-minimizer threshold.  Weights are assumed stepsize-folded.  This is
    not the global block minimizer: zero-tail candidates are handled by the
    prefix search.
    """
    if not family.is_thresholded:
        raise UnsupportedFamilyError(
            f"nonconvex pooling needs a log_sum or lq penalty, not {family.kind}"
        )
    return _scalar.block_candidate(family.code, family.param, block.y_mean, block.lam_mean)


def _validate_inputs(y, lams):
    y = np.ascontiguousarray(y, dtype=np.float64)
    lams = np.ascontiguousarray(lams, dtype=np.float64)
    if y.ndim != 1 or lams.ndim != 1 or y.shape != lams.shape:
        raise DomainError("y and lams must be 1-d arrays of equal length")
    if y.size == 0:
        raise DomainError("empty input")
    if np.isnan(y).any() or np.isnan(lams).any():
        raise DomainError("NaN input")
    if np.any(np.diff(y) > 0) or y[-1] < 0:
        raise DomainError("y must be sorted non-increasing and nonnegative")
    if np.any(np.diff(lams) > 0) or lams[-1] < 0:
        raise DomainError("lams must be sorted non-increasing and nonnegative")
    return y, lams


def pav(y, lams, pooling: PoolingRule) -> BlockPartition:
    """Pool-adjacent-violators on a sorted nonnegative vector.

    Returns the final partition with strictly decreasing block values (equal
    adjacent values are coalesced after the sweep, and the blockwise positive
    part is applied; pooled values are already nonnegative so the projection
    is a safety no-op).
    """
    y, lams = _validate_inputs(y, lams)
    if pooling.rule == backend.RULE_WC:
        mu = weak_convexity_modulus(pooling.family, float(lams[0]))
        if pooling.eta * mu >= 1.0 and mu > 0.0:
            raise RegimeError(
                f"eta={pooling.eta} with modulus {mu}: pav needs eta*mu < 1"
            )
    starts, values = backend.pav_blocks(
        y, lams, pooling.rule, pooling.family.code, pooling.family.param,
        pooling.eta)
    return _build_partition(y, lams, starts, np.maximum(values, 0.0))


def _build_partition(y, lams, starts, values) -> BlockPartition:
    p = y.size
    ycum = np.concatenate(([0.0], np.cumsum(y)))
    lcum = np.concatenate(([0.0], np.cumsum(lams)))
    bounds = [int(s) for s in starts] + [int(p)]
    blocks = []
    for b in range(len(values)):
        q, r = bounds[b], bounds[b + 1] - 1
        v = float(values[b])
        if blocks and blocks[-1].value == v:
            prev = blocks[-1]
            prev.end = r
            prev.y_sum += float(ycum[r + 1] - ycum[q])
            prev.lam_sum += float(lcum[r + 1] - lcum[q])
        else:
            blocks.append(Block(start=q, end=r, value=v,
                                y_sum=float(ycum[r + 1] - ycum[q]),
                                lam_sum=float(lcum[r + 1] - lcum[q])))
    return BlockPartition(blocks=blocks, p=int(p))


def partition_from_values(x, y, lams) -> BlockPartition:
    """Maximal constant blocks of a feasible vector, with cached sums."""
    x = np.asarray(x, dtype=np.float64)
    starts = np.concatenate(([0], np.flatnonzero(np.diff(x) != 0.0) + 1))
    return _build_partition(np.asarray(y, dtype=np.float64),
                            np.asarray(lams, dtype=np.float64),
                            starts, x[starts])


def flatten(partition: BlockPartition) -> np.ndarray:
    """Expand a partition into the length-p blockwise-constant vector."""
    out = np.empty(partition.p, dtype=np.float64)
    for b in partition.blocks:
        out[b.start:b.end + 1] = b.value
    return out
