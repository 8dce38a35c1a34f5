"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled module ``sortedprox._pav_cy`` is built at install time; when it
is missing (or ``SORTEDPROX_BACKEND=python`` is set) the pure-Python kernels
take over.  Both expose the same two entry points with identical semantics
and floating-point behaviour:

    pav_blocks(y, lams, rule, kind, param, eta) -> (starts, values)
    dpav_run(y, lams, kind, param) -> (x, best_k, best_objective)
"""

from __future__ import annotations

import os

from . import _pav_py

RULE_WC = _pav_py.RULE_WC
RULE_CHI = _pav_py.RULE_CHI
RULE_MCP_RIDGE = _pav_py.RULE_MCP_RIDGE

try:
    from . import _pav_cy as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

_BACKENDS = {"python": _pav_py}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_env = os.environ.get("SORTEDPROX_BACKEND", "").strip().lower()
if _env and _env not in _BACKENDS:
    raise ImportError(
        f"SORTEDPROX_BACKEND={_env!r} is not available; "
        f"choices: {sorted(_BACKENDS)}"
    )
ACTIVE = _env or ("compiled" if _compiled is not None else "python")

pav_blocks = _BACKENDS[ACTIVE].pav_blocks
dpav_run = _BACKENDS[ACTIVE].dpav_run


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_backend(name: str):
    """Return the backend module for ``name`` ('python' or 'compiled')."""
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available; choices: {sorted(_BACKENDS)}")
    return _BACKENDS[name]


def set_backend(name: str) -> str:
    """Switch the active kernels; returns the previous backend name."""
    global ACTIVE, pav_blocks, dpav_run
    mod = get_backend(name)
    previous = ACTIVE
    ACTIVE = name
    pav_blocks = mod.pav_blocks
    dpav_run = mod.dpav_run
    return previous
