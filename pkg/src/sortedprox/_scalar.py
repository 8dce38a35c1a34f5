"""Raw scalar penalty math shared by the public API and the Python kernels.

Everything here works on plain floats, performs no argument validation, and
assumes the stepsize has already been folded into ``lam`` for the scaled
families (l1, log-sum, lq).  MCP and SCAD are not scaled in ``lam``, so the
pooling helpers that need a stepsize take ``eta`` explicitly.

Family codes (shared with the compiled kernel):

    0 = l1, 1 = mcp, 2 = scad, 3 = log_sum, 4 = lq

``param`` is the single family parameter (gamma, gamma, eps, q; unused for l1).

The compiled kernel in ``_pav_cy.pyx`` mirrors these formulas expression by
expression; keep both sides identical so the backends agree bit for bit.
"""

from __future__ import annotations

from math import inf, log, log1p, sqrt

L1, MCP, SCAD, LOG_SUM, LQ = 0, 1, 2, 3, 4

# Newton/bisection tolerances: an order tighter than the 1e-10 block
# comparisons downstream.
_ROOT_RTOL = 1e-15
_ROOT_MAX_ITER = 200
_T_BISECT_TOL = 1e-13


def psi(kind: int, param: float, z: float, lam: float) -> float:
    """Penalty value at z >= 0."""
    if lam == 0.0:
        return 0.0
    if kind == L1:
        return lam * z
    if kind == MCP:
        if z <= param * lam:
            return lam * z - z * z / (2.0 * param)
        return param * lam * lam / 2.0
    if kind == SCAD:
        if z <= lam:
            return lam * z
        if z <= param * lam:
            return (2.0 * param * lam * z - z * z - lam * lam) / (2.0 * (param - 1.0))
        return lam * lam * (param + 1.0) / 2.0
    if kind == LOG_SUM:
        return lam * log1p(z / param)
    # LQ
    if z == 0.0:
        return 0.0
    return lam * z ** param


def dpsi(kind: int, param: float, z: float, lam: float) -> float:
    """First derivative in z, for z > 0."""
    if lam == 0.0:
        return 0.0
    if kind == L1:
        return lam
    if kind == MCP:
        v = lam - z / param
        return v if v > 0.0 else 0.0
    if kind == SCAD:
        if z <= lam:
            return lam
        if z <= param * lam:
            return (param * lam - z) / (param - 1.0)
        return 0.0
    if kind == LOG_SUM:
        return lam / (param + z)
    return lam * param * z ** (param - 1.0)


def dpsi_at_zero(kind: int, param: float, lam: float) -> float:
    """Right limit of the derivative at 0 (may be +inf for lq)."""
    if lam == 0.0:
        return 0.0
    if kind in (L1, MCP, SCAD):
        return lam
    if kind == LOG_SUM:
        return lam / param
    return inf


def ddpsi(kind: int, param: float, z: float, lam: float) -> float:
    """Second derivative in z, for z > 0 outside the non-smooth points."""
    if lam == 0.0 or kind == L1:
        return 0.0
    if kind == MCP:
        return -1.0 / param if z < param * lam else 0.0
    if kind == SCAD:
        if z < lam:
            return 0.0
        if z < param * lam:
            return -1.0 / (param - 1.0)
        return 0.0
    if kind == LOG_SUM:
        return -lam / ((param + z) * (param + z))
    return lam * param * (param - 1.0) * z ** (param - 2.0)


def objective(kind: int, param: float, z: float, y: float, lam: float) -> float:
    """Scalar prox objective 0.5*(z - y)^2 + psi(z; lam)."""
    return 0.5 * (z - y) * (z - y) + psi(kind, param, z, lam)


def concavity_boundary(kind: int, param: float, lam: float) -> float:
    """Largest z below which the scalar objective is strictly concave."""
    if lam == 0.0:
        return 0.0
    if kind == LOG_SUM:
        v = sqrt(lam) - param
        return v if v > 0.0 else 0.0
    # LQ
    q = param
    return (lam * q * (1.0 - q)) ** (1.0 / (2.0 - q))


def local_min_threshold(kind: int, param: float, lam: float) -> float:
    """Smallest y for which a nonzero local minimizer exists."""
    if lam == 0.0:
        return 0.0
    if kind == LOG_SUM:
        eps = param
        if lam >= eps * eps:
            return 2.0 * sqrt(lam) - eps
        return lam / eps
    q = param
    m = (lam * q * (1.0 - q)) ** (1.0 / (2.0 - q))
    return m * ((2.0 - q) / (1.0 - q))


def global_min_threshold(kind: int, param: float, lam: float) -> float:
    """Input level where the global scalar minimizer jumps away from 0."""
    if lam == 0.0:
        return 0.0
    if kind == LQ:
        q = param
        return (0.5 * (2.0 - q) / (1.0 - q)) * (2.0 * lam * (1.0 - q)) ** (1.0 / (2.0 - q))
    # log-sum: explicit in the convex regime, bisection on the tie otherwise.
    eps = param
    if lam <= eps * eps:
        return lam / eps
    lo = 2.0 * sqrt(lam) - eps
    hi = lam / eps
    while hi - lo > _T_BISECT_TOL:
        y = 0.5 * (lo + hi)
        r = stationary_log_sum(eps, y, lam)
        gap = 0.5 * (r - y) * (r - y) + lam * log1p(r / eps) - 0.5 * y * y
        if gap > 0.0:
            lo = y
        else:
            hi = y
    return 0.5 * (lo + hi)


def stationary_log_sum(eps: float, y: float, lam: float) -> float:
    """Nonzero stationary point of the log-sum scalar objective."""
    disc = 0.25 * (y + eps) * (y + eps) - lam
    if disc < 0.0:
        disc = 0.0
    v = 0.5 * (y - eps) + sqrt(disc)
    return v if v > 0.0 else 0.0


def stationary_lq(q: float, y: float, lam: float) -> float:
    """Root of z - y + lam*q*z^(q-1) on [m(lam), inf), by safeguarded Newton.

    The map is convex and increasing there, so Newton from z0 = y decreases
    monotonically to the root; bisection guards the near-tangent threshold case.
    """
    if lam == 0.0:
        return y
    lo = (lam * q * (1.0 - q)) ** (1.0 / (2.0 - q))
    hi = y
    z = y
    for _ in range(_ROOT_MAX_ITER):
        g = z - y + lam * q * z ** (q - 1.0)
        dg = 1.0 - lam * q * (1.0 - q) * z ** (q - 2.0)
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
        if abs(znew - z) <= _ROOT_RTOL * max(1.0, abs(znew)):
            return znew
        z = znew
    return z


def nonzero_stationary(kind: int, param: float, y: float, lam: float) -> float:
    """Nonzero stationary point for a thresholded family (y above the local threshold)."""
    if lam == 0.0:
        return y
    if kind == LOG_SUM:
        return stationary_log_sum(param, y, lam)
    return stationary_lq(param, y, lam)


def block_candidate(kind: int, param: float, ybar: float, lambar: float) -> float:
    """Largest local minimizer of the block objective: stationary point above
    the local threshold, else 0."""
    if lambar == 0.0:
        return ybar
    if ybar >= local_min_threshold(kind, param, lambar):
        return nonzero_stationary(kind, param, ybar, lambar)
    return 0.0


def prox_value(kind: int, param: float, y: float, lam: float) -> float:
    """Global minimizer of the scalar prox objective (ties resolve nonzero).

    The effective regularization is ``lam`` (stepsize already folded); MCP and
    SCAD are interpreted at unit stepsize.
    """
    if lam == 0.0 or y == 0.0:
        return y
    if kind == L1:
        v = y - lam
        return v if v > 0.0 else 0.0
    if kind == MCP:
        g = param
        if g > 1.0:
            if y <= lam:
                return 0.0
            if y >= g * lam:
                return y
            return g * (y - lam) / (g - 1.0)
        # Concave regime: candidates are 0 and y, tie at lam*sqrt(g).
        return y if y >= lam * sqrt(g) else 0.0
    if kind == SCAD:
        return _prox_scad(param, y, lam)
    if kind == LOG_SUM and lam <= param * param:
        # Convex regime: exact root of the monotone optimality condition.
        if y <= lam / param:
            return 0.0
        return stationary_log_sum(param, y, lam)
    # Thresholded regime: compare against the global-minimizer threshold.
    if y < local_min_threshold(kind, param, lam):
        return 0.0
    if y < global_min_threshold(kind, param, lam):
        return 0.0
    return nonzero_stationary(kind, param, y, lam)


def _prox_scad(g: float, y: float, lam: float) -> float:
    """Monotone piecewise-linear root-finding for the SCAD prox (g > 2)."""
    # F'(z) = z - y + psi'(z) on the pieces [0, lam], [lam, g*lam], [g*lam, inf).
    if lam - y >= 0.0:  # F'(0) >= 0
        return 0.0
    if lam + lam - y <= 0.0:  # root beyond the first piece
        if g * lam - y <= 0.0:
            return y  # third piece: z = y
        return ((g - 1.0) * y - g * lam) / (g - 2.0)
    return y - lam


# ---------------------------------------------------------------------------
# Weakly convex pooling values (clamped at 0, i.e. argmin over R+).
# ---------------------------------------------------------------------------

def pool_l1(ybar: float, lambar: float, eta: float) -> float:
    v = ybar - eta * lambar
    return v if v > 0.0 else 0.0


def pool_log_sum(eps: float, ybar: float, lambar: float, eta: float) -> float:
    t = eta * lambar
    if ybar <= t / eps:
        return 0.0
    disc = 0.25 * (ybar + eps) * (ybar + eps) - t
    if disc < 0.0:
        disc = 0.0
    return 0.5 * (ybar - eps) + sqrt(disc)


def pool_mcp(gamma: float, lams, q: int, r: int, ysum: float, eta: float,
             ridge: bool) -> float:
    """Blockwise MCP pooling via the per-index breakpoint walk.

    Solves (n/eta)(z - ybar) + sum_j (lam_j - z/gamma)_+ [+ n*z/gamma] = 0 on
    the pieces delimited by the breakpoints gamma*lam_j, descending.  With
    ``ridge`` the extra n*z/gamma term turns the penalty into the convex
    MCP + z^2/(2*gamma) surrogate used by the MM baseline.
    """
    n = r - q + 1
    base = n / eta + (n / gamma if ridge else 0.0)
    s = 0.0
    k = 0
    # Active set {q..q+k-1}; piece valid for z in [gamma*lam_{q+k}, prev bp).
    while True:
        slope = base - k / gamma
        z = (ysum / eta - s) / slope
        if k == n or z >= gamma * lams[q + k]:
            break
        s += lams[q + k]
        k += 1
    return z if z > 0.0 else 0.0


def pool_scad(gamma: float, lams, q: int, r: int, ysum: float, eta: float) -> float:
    """Blockwise SCAD pooling by bisection on the increasing block derivative."""
    n = r - q + 1
    ybar = ysum / n

    def deriv(z: float) -> float:
        acc = n * (z - ybar) / eta
        for j in range(q, r + 1):
            acc += dpsi(SCAD, gamma, z, lams[j])
        return acc

    if deriv(0.0) >= 0.0:
        return 0.0
    lo, hi = 0.0, ybar
    for _ in range(_ROOT_MAX_ITER):
        z = 0.5 * (lo + hi)
        if deriv(z) > 0.0:
            hi = z
        else:
            lo = z
        if hi - lo <= _ROOT_RTOL * max(1.0, hi):
            break
    return 0.5 * (lo + hi)
