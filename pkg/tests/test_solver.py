import math

import numpy as np
import pytest

from sortedprox import datagen, oracle, solver
from sortedprox.errors import (
    ConfigurationError,
    DivergenceError,
    UnsupportedFamilyError,
)
from sortedprox.penalty import PenaltyFamily
from sortedprox.sorted_prox import SortedPenalty

L1 = PenaltyFamily.l1()


def slope_penalty(p, scale=1.0):
    i = np.arange(1, p + 1, dtype=float)
    return SortedPenalty(L1, scale * (p - i + 1) / p)


class TestProblemInstance:
    def test_validation(self):
        A = np.zeros((4, 3))
        with pytest.raises(ConfigurationError):
            solver.ProblemInstance(A, np.zeros(5), "leastsquares",
                                   slope_penalty(3))
        with pytest.raises(ConfigurationError):
            solver.ProblemInstance(A, np.zeros(4), "leastsquares",
                                   slope_penalty(2))
        with pytest.raises(ConfigurationError):
            solver.ProblemInstance(A, np.zeros(4), "huber", slope_penalty(3))
        with pytest.raises(ConfigurationError):
            solver.ProblemInstance(A, np.zeros(4), "logistic", slope_penalty(3))


class TestDatafit:
    def test_least_squares_at_zero(self):
        rng = np.random.default_rng(0)
        A = rng.standard_normal((6, 4))
        b = rng.standard_normal(6)
        inst = solver.ProblemInstance(A, b, "leastsquares", slope_penalty(4))
        v, g = solver.datafit_value_grad(inst, np.zeros(4))
        assert v == pytest.approx(0.5 * b @ b)
        assert np.allclose(g, A.T @ (-b))

    def test_logistic_at_zero_is_log_two(self):
        rng = np.random.default_rng(1)
        A = rng.standard_normal((8, 4))
        b = np.sign(rng.standard_normal(8))
        b[b == 0] = 1.0
        inst = solver.ProblemInstance(A, b, "logistic", slope_penalty(4))
        v, _ = solver.datafit_value_grad(inst, np.zeros(4))
        assert v == pytest.approx(math.log(2.0), abs=1e-12)

    def test_gradients_match_finite_differences(self):
        rng = np.random.default_rng(2)
        A = rng.standard_normal((10, 5))
        b_ls = rng.standard_normal(10)
        b_lg = np.sign(rng.standard_normal(10))
        b_lg[b_lg == 0] = 1.0
        for datafit, b in (("leastsquares", b_ls), ("logistic", b_lg)):
            inst = solver.ProblemInstance(A, b, datafit, slope_penalty(5))
            x0 = rng.standard_normal(5) * 0.5
            _, g = solver.datafit_value_grad(inst, x0)
            h = 1e-6
            for i in range(5):
                e = np.zeros(5)
                e[i] = h
                fd = (solver.datafit_value_grad(inst, x0 + e)[0]
                      - solver.datafit_value_grad(inst, x0 - e)[0]) / (2 * h)
                assert abs(fd - g[i]) <= 1e-5 * max(1.0, abs(g[i]))

    def test_logistic_overflow_safe(self):
        A = np.array([[1000.0], [-1000.0]])
        b = np.array([1.0, -1.0])
        inst = solver.ProblemInstance(A, b, "logistic", slope_penalty(1))
        v, g = solver.datafit_value_grad(inst, np.array([5.0]))
        assert math.isfinite(v) and np.all(np.isfinite(g))
        v, g = solver.datafit_value_grad(inst, np.array([-5.0]))
        assert math.isfinite(v) and np.all(np.isfinite(g))


class TestLipschitz:
    def test_identity_matrix(self):
        inst = solver.ProblemInstance(np.eye(5), np.zeros(5), "leastsquares",
                                      slope_penalty(5))
        assert solver.lipschitz_estimate(inst) == pytest.approx(1.0, rel=1e-9)

    def test_identity_logistic(self):
        b = np.ones(5)
        inst = solver.ProblemInstance(np.eye(5), b, "logistic",
                                      slope_penalty(5))
        assert solver.lipschitz_estimate(inst) == pytest.approx(
            1.0 / 20.0, rel=1e-9)

    def test_matches_dense_svd(self):
        rng = np.random.default_rng(3)
        A = rng.standard_normal((20, 10))
        inst = solver.ProblemInstance(A, np.zeros(20), "leastsquares",
                                      slope_penalty(10))
        L = solver.lipschitz_estimate(inst)
        smax2 = np.linalg.svd(A, compute_uv=False)[0] ** 2
        assert abs(L - smax2) <= 1e-6 * smax2

    def test_zero_matrix(self):
        inst = solver.ProblemInstance(np.zeros((4, 3)), np.zeros(4),
                                      "leastsquares", slope_penalty(3))
        assert solver.lipschitz_estimate(inst) == 0.0
        assert solver.default_stepsize(inst) > 0


class TestPgd:
    def test_unpenalized_least_squares(self):
        rng = np.random.default_rng(4)
        A = np.eye(6) + 0.05 * rng.standard_normal((6, 6))
        b = rng.standard_normal(6)
        pen = SortedPenalty(L1, np.zeros(6))
        inst = solver.ProblemInstance(A, b, "leastsquares", pen)
        x, trace = solver.pgd(inst, tol=1e-14, max_iter=50000)
        assert np.linalg.norm(x - np.linalg.solve(A, b)) <= 1e-6

    def test_slope_fixed_point_residual(self):
        rng = np.random.default_rng(5)
        A = rng.standard_normal((12, 8))
        b = rng.standard_normal(12)
        pen = slope_penalty(8, scale=2.0)
        inst = solver.ProblemInstance(A, b, "leastsquares", pen)
        for accelerated in (False, True):
            x, trace = solver.pgd(inst, tol=1e-12, max_iter=50000,
                                  accelerated=accelerated)
            eta = solver.default_stepsize(inst)
            resid = np.linalg.norm(x - solver.prox_step(inst, x, eta))
            assert resid <= 1e-6

    def test_converged_residual_invariant(self):
        # The loss-difference stopping rule bounds the final step norm via the
        # descent inequality: loss drop >= ||step||^2 / (2*eta), so a
        # converged run has fixed-point residual <= 10 * sqrt(2*eta*tol).
        rng = np.random.default_rng(6)
        A = rng.standard_normal((15, 10))
        b = rng.standard_normal(15)
        pen = SortedPenalty(PenaltyFamily.mcp(2.0), slope_penalty(10).lams)
        inst = solver.ProblemInstance(A, b, "leastsquares", pen)
        for tol in (1e-8, 1e-10):
            x, _ = solver.pgd(inst, tol=tol, max_iter=100000)
            eta = solver.default_stepsize(inst)
            resid = np.linalg.norm(x - solver.prox_step(inst, x, eta))
            assert resid <= 10.0 * math.sqrt(2.0 * eta * tol)

    def test_weakly_convex_objective_monotone(self):
        rng = np.random.default_rng(7)
        for trial in range(5):
            A = rng.standard_normal((12, 9))
            b = rng.standard_normal(12)
            pen = SortedPenalty(PenaltyFamily.mcp(2.0),
                                np.sort(rng.uniform(0, 1, 9))[::-1].copy())
            inst = solver.ProblemInstance(A, b, "leastsquares", pen)
            L = solver.lipschitz_estimate(inst)
            eta = 0.99 * min(1.0 / L, 2.0)
            _, trace = solver.pgd(inst, eta=eta, tol=0.0, max_iter=300)
            diffs = np.diff(trace.objective)
            assert np.all(diffs <= 1e-12)

    def test_divergence_raises_with_trace(self):
        rng = np.random.default_rng(8)
        A = rng.standard_normal((10, 6)) * 3
        b = rng.standard_normal(10)
        inst = solver.ProblemInstance(A, b, "leastsquares", slope_penalty(6))
        with pytest.raises(DivergenceError) as err, np.errstate(all="ignore"):
            solver.pgd(inst, eta=1e6, tol=0.0, max_iter=2000)
        assert err.value.trace is not None
        assert len(err.value.trace) >= 1

    def test_rejects_bad_eta(self):
        inst = solver.ProblemInstance(np.eye(3), np.zeros(3), "leastsquares",
                                      slope_penalty(3))
        with pytest.raises(ConfigurationError):
            solver.pgd(inst, eta=-1.0)


class TestMmBaseline:
    def _instance(self, seed=9, gamma=1.1, n=40, d=12):
        A = datagen.gen_toeplitz_design(n, d, 0.4, seed=seed)
        x_star = np.zeros(d)
        x_star[:3] = 0.5
        x_star[3:6] = -0.5
        b = datagen.add_noise_snr(A @ x_star, 10.0, seed=seed + 1)
        alpha = 0.4 * float(np.max(np.abs(A.T @ b)))
        i = np.arange(1, d + 1, dtype=float)
        pen = SortedPenalty(PenaltyFamily.mcp(gamma), alpha * (d - i) / d)
        return solver.ProblemInstance(A, b, "leastsquares", pen)

    def test_requires_mcp(self):
        inst = solver.ProblemInstance(np.eye(3), np.zeros(3), "leastsquares",
                                      slope_penalty(3))
        with pytest.raises(UnsupportedFamilyError):
            solver.mm_lca_smcp(inst)

    def test_huge_gamma_degenerates_to_pgd(self):
        inst = self._instance(gamma=1e9)
        eta = solver.default_stepsize(inst)
        x1, tr1 = solver.pgd(inst, eta=eta, tol=0.0, max_iter=60)
        x2, tr2 = solver.mm_lca_smcp(inst, eta=eta, tol=0.0, max_iter=60)
        assert np.allclose(x1, x2, rtol=1e-7, atol=1e-9)
        assert np.allclose(tr1.objective, tr2.objective, rtol=1e-7)

    def test_least_squares_parity(self):
        inst = self._instance()
        tol = 1e-7
        x1, tr1 = solver.pgd(inst, tol=tol, max_iter=100000)
        x2, tr2 = solver.mm_lca_smcp(inst, tol=tol, max_iter=100000)
        assert abs(tr1.objective[-1] - tr2.objective[-1]) <= 2 * tol * max(
            1.0, abs(tr1.objective[-1]))

    def test_trace_records_original_objective(self):
        inst = self._instance()
        x, trace = solver.mm_lca_smcp(inst, tol=1e-7, max_iter=50000)
        fit, _ = solver.datafit_value_grad(inst, x)
        pen = solver.penalty_value(inst.penalty, x)
        assert trace.objective[-1] == pytest.approx(fit + pen, rel=1e-12)

    def test_surrogate_penalty_is_convex(self):
        # scalar surrogate MCP(z; lam) + z^2/(2*gamma): curvature >= 0
        gamma = 1.1
        fam = PenaltyFamily.mcp(gamma)
        for lam in (0.3, 1.0, 2.5):
            zs = np.linspace(1e-3, 4.0, 200)
            h = 1e-5
            for z in zs:
                if abs(z - gamma * lam) < 10 * h:
                    continue
                f = lambda t: (float(oracle.penalty_values(fam, np.array([t]),
                                                           lam)[0])
                               + t * t / (2 * gamma))
                second = (f(z + h) - 2 * f(z) + f(z - h)) / (h * h)
                assert second >= -1e-4


class TestTrace:
    def test_fields_aligned(self):
        inst = solver.ProblemInstance(np.eye(4), np.ones(4), "leastsquares",
                                      slope_penalty(4, scale=0.5))
        x, trace = solver.pgd(inst, tol=1e-10, max_iter=500)
        n = len(trace)
        assert (len(trace.objective) == len(trace.datafit_value)
                == len(trace.penalty_value) == len(trace.wall_time) == n)
        assert trace.iterations == list(range(n))
        np.testing.assert_allclose(
            np.asarray(trace.objective),
            np.asarray(trace.datafit_value) + np.asarray(trace.penalty_value),
            rtol=1e-12)
