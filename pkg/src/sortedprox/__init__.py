"""Proximal operators of sorted penalties (SLOPE and nonconvex relatives).

Scalar penalty calculus, a pool-adjacent-violators engine with pluggable
pooling rules, a prefix-search prox for the non-weakly-convex families,
brute-force oracles, proximal-gradient solvers and the experiment CLI.

The hot kernels run on a compiled extension when available and fall back to
pure Python (see :mod:`sortedprox.backend`).
"""

from .backend import ACTIVE as backend_name
from .errors import (
    ConfigurationError,
    DivergenceError,
    DomainError,
    NoNonzeroMinimizerError,
    NumericalError,
    RegimeError,
    UnsupportedFamilyError,
)
from .penalty import PenaltyFamily, ScalarProxResult, scalar_prox
from .sorted_prox import ProxResult, SortedPenalty, dpav, prox

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DivergenceError",
    "DomainError",
    "NoNonzeroMinimizerError",
    "NumericalError",
    "PenaltyFamily",
    "ProxResult",
    "RegimeError",
    "ScalarProxResult",
    "SortedPenalty",
    "UnsupportedFamilyError",
    "backend_name",
    "dpav",
    "prox",
    "scalar_prox",
    "__version__",
]
