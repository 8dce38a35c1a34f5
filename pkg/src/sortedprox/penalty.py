"""Scalar penalty calculus for sorted-penalty proximal computations.

A :class:`PenaltyFamily` bundles one concave scalar penalty ``psi(z; lam)``
with its derivatives, weak-convexity modulus and, for the scaled families
(log-sum, lq), the three thresholds that organise the scalar prox:

* ``concavity_boundary`` -- boundary m between the strictly concave and the
  convex part of the objective 0.5*(z-y)^2 + psi(z; lam);
* ``local_min_threshold`` -- smallest y (tau) for which a nonzero local
  minimizer exists;
* ``global_min_threshold`` -- the y (T) at which the global minimizer jumps
  from 0 to the nonzero stationary point.

All operations take the *effective* regularization: callers fold a prox
stepsize eta by passing eta*lam for the scaled families.  Everything is a pure
function of its arguments and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _scalar
from .errors import (
    ConfigurationError,
    DomainError,
    NoNonzeroMinimizerError,
    UnsupportedFamilyError,
)

_KIND_CODES = {"l1": 0, "mcp": 1, "scad": 2, "log_sum": 3, "lq": 4}
_SCALED_KINDS = ("l1", "log_sum", "lq")       # psi(z; lam) = lam * psi0(z)
_HYP3_KINDS = ("log_sum", "lq")               # thresholded scalar analysis


@dataclass(frozen=True)
class PenaltyFamily:
    """One scalar penalty family with its parameter.

    Use the constructors :meth:`l1`, :meth:`mcp`, :meth:`scad`,
    :meth:`log_sum`, :meth:`lq` rather than instantiating directly.
    """

    kind: str
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in _KIND_CODES:
            raise ConfigurationError(f"unknown penalty kind {self.kind!r}")
        p = self.param
        if self.kind == "mcp" and not p > 0:
            raise ConfigurationError("mcp requires gamma > 0")
        if self.kind == "scad" and not p > 2:
            raise ConfigurationError("scad requires gamma > 2")
        if self.kind == "log_sum" and not p > 0:
            raise ConfigurationError("log_sum requires eps > 0")
        if self.kind == "lq" and not 0 < p < 1:
            raise ConfigurationError("lq requires q in (0, 1)")

    @classmethod
    def l1(cls) -> "PenaltyFamily":
        return cls("l1")

    @classmethod
    def mcp(cls, gamma: float) -> "PenaltyFamily":
        return cls("mcp", float(gamma))

    @classmethod
    def scad(cls, gamma: float) -> "PenaltyFamily":
        return cls("scad", float(gamma))

    @classmethod
    def log_sum(cls, eps: float) -> "PenaltyFamily":
        return cls("log_sum", float(eps))

    @classmethod
    def lq(cls, q: float) -> "PenaltyFamily":
        return cls("lq", float(q))

    @property
    def code(self) -> int:
        return _KIND_CODES[self.kind]

    @property
    def is_scaled(self) -> bool:
        """True when psi(z; lam) = lam * psi0(z), so a stepsize folds into lam."""
        return self.kind in _SCALED_KINDS

    @property
    def is_thresholded(self) -> bool:
        """True for the families covered by the nonconvex scalar analysis."""
        return self.kind in _HYP3_KINDS

    def nondiff_points(self, lam: float) -> tuple[float, ...]:
        """Positive z where the second derivative is undefined."""
        if lam <= 0:
            return ()
        if self.kind == "mcp":
            return (self.param * lam,)
        if self.kind == "scad":
            return (lam, self.param * lam)
        return ()


@dataclass(frozen=True)
class ScalarProxResult:
    """Scalar prox point with its objective; ``tied`` flags an exact 0/rho+ tie."""

    value: float
    tied: bool
    objective: float


def _check_nonneg(name: str, v: float) -> float:
    v = float(v)
    if not v >= 0 or math.isnan(v):
        raise DomainError(f"{name} must be nonnegative, got {v}")
    return v


def _require_thresholded(family: PenaltyFamily, op: str):
    if not family.is_thresholded:
        raise UnsupportedFamilyError(
            f"{op} is defined for log_sum and lq penalties, not {family.kind}"
        )


def value(family: PenaltyFamily, z: float, lam: float) -> float:
    """Penalty value psi(z; lam) for z >= 0, lam >= 0."""
    z = _check_nonneg("z", z)
    lam = _check_nonneg("lam", lam)
    return _scalar.psi(family.code, family.param, z, lam)


def deriv(family: PenaltyFamily, z: float, lam: float) -> float:
    """First derivative of psi in z, for z > 0."""
    if not z > 0:
        raise DomainError(f"deriv requires z > 0, got {z}")
    lam = _check_nonneg("lam", lam)
    return _scalar.dpsi(family.code, family.param, float(z), lam)


def deriv_at_zero(family: PenaltyFamily, lam: float) -> float:
    """Right limit of the derivative at 0; +inf for lq."""
    lam = _check_nonneg("lam", lam)
    return _scalar.dpsi_at_zero(family.code, family.param, lam)


def second_deriv(family: PenaltyFamily, z: float, lam: float) -> float:
    """Second derivative of psi in z, for z > 0 away from non-smooth points."""
    if not z > 0:
        raise DomainError(f"second_deriv requires z > 0, got {z}")
    lam = _check_nonneg("lam", lam)
    return _scalar.ddpsi(family.code, family.param, float(z), lam)


def weak_convexity_modulus(family: PenaltyFamily, lam_max: float) -> float:
    """Smallest mu making psi(.; lam) + (mu/2) z^2 convex for all lam <= lam_max."""
    lam_max = _check_nonneg("lam_max", lam_max)
    if family.kind == "l1":
        return 0.0
    if family.kind == "mcp":
        return 1.0 / family.param
    if family.kind == "scad":
        return 1.0 / (family.param - 1.0)
    if family.kind == "log_sum":
        return lam_max / (family.param * family.param)
    return math.inf


def concavity_boundary(family: PenaltyFamily, lam: float) -> float:
    """Boundary m(lam) between the concave and convex regions of the objective."""
    _require_thresholded(family, "concavity_boundary")
    lam = _check_nonneg("lam", lam)
    return _scalar.concavity_boundary(family.code, family.param, lam)


def local_min_threshold(family: PenaltyFamily, lam: float) -> float:
    """tau(lam): below it, 0 is the unique local minimizer of the objective."""
    _require_thresholded(family, "local_min_threshold")
    lam = _check_nonneg("lam", lam)
    return _scalar.local_min_threshold(family.code, family.param, lam)


def global_min_threshold(family: PenaltyFamily, lam: float) -> float:
    """T(lam): the y at which the global minimizer switches from 0 to rho+."""
    _require_thresholded(family, "global_min_threshold")
    lam = _check_nonneg("lam", lam)
    return _scalar.global_min_threshold(family.code, family.param, lam)


def largest_local_min(family: PenaltyFamily, y: float, lam: float) -> float:
    """Nonzero stationary point rho+(y; lam), defined for y >= tau(lam)."""
    _require_thresholded(family, "largest_local_min")
    y = _check_nonneg("y", y)
    lam = _check_nonneg("lam", lam)
    if y < _scalar.local_min_threshold(family.code, family.param, lam):
        raise NoNonzeroMinimizerError(
            f"y={y} is below the local-minimizer threshold for lam={lam}"
        )
    return _scalar.nonzero_stationary(family.code, family.param, y, lam)


def scalar_objective(family: PenaltyFamily, z: float, y: float, lam: float) -> float:
    """Scalar prox objective 0.5*(z - y)^2 + psi(z; lam)."""
    z = _check_nonneg("z", z)
    return _scalar.objective(family.code, family.param, z, float(y), float(lam))


def scalar_prox(family: PenaltyFamily, y: float, lam: float) -> ScalarProxResult:
    """Global minimizer of the scalar prox objective at effective weight lam.

    At an exact 0/rho+ objective tie the nonzero branch is returned with
    ``tied=True`` (ties are detected on the objective values, relative
    tolerance 1e-12).
    """
    y = _check_nonneg("y", y)
    lam = _check_nonneg("lam", lam)
    code, param = family.code, family.param
    v = _scalar.prox_value(code, param, y, lam)
    obj = _scalar.objective(code, param, v, y, lam)
    tied = False
    if v > 0.0:
        at_zero = 0.5 * y * y
        tied = abs(at_zero - obj) <= 1e-12 * max(1.0, at_zero)
    return ScalarProxResult(value=v, tied=tied, objective=obj)
