import math

import numpy as np
import pytest

from sortedprox import oracle, penalty
from sortedprox.errors import ConfigurationError
from sortedprox.penalty import PenaltyFamily
from sortedprox.sorted_prox import dpav

LQ12 = PenaltyFamily.lq(0.5)
LOGSUM1 = PenaltyFamily.log_sum(1.0)


class TestGridScalarProx:
    def test_identity_when_unpenalized(self):
        arg, obj = oracle.grid_scalar_prox(PenaltyFamily.l1(), 2.5, 0.0)
        assert arg == pytest.approx(2.5, abs=1e-7)
        assert obj == pytest.approx(0.0, abs=1e-12)

    def test_tie_case_objective(self):
        # both basins have objective 1.125 at the tie input
        arg, obj = oracle.grid_scalar_prox(LQ12, 1.5, 1.0, step=1e-4)
        assert obj == pytest.approx(1.125, abs=1e-8)
        assert min(abs(arg - 0.0), abs(arg - 1.0)) < 1e-3

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            oracle.grid_scalar_prox(LQ12, 2.0, 1.0, z_max=1.0)
        with pytest.raises(ConfigurationError):
            oracle.grid_scalar_prox(LQ12, 2.0, 1.0, step=0.0)


class TestExhaustivePartitionProx:
    def test_p1_matches_grid(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            y = float(rng.uniform(0.0, 5.0))
            lam = float(rng.uniform(0.0, 3.0))
            rep = oracle.exhaustive_partition_prox(LQ12, [lam], [y])
            _, obj = oracle.grid_scalar_prox(LQ12, y, lam, step=1e-5)
            assert rep.objective == pytest.approx(obj, abs=1e-8)

    def test_size_limit(self):
        with pytest.raises(ConfigurationError):
            oracle.exhaustive_partition_prox(LQ12, np.ones(13), np.ones(13))

    def test_2d_zero_tail_beats_plain_pav(self):
        # Near-threshold pair: the nonzero block_candidate blocks are ordered so PAV keeps
        # them, but zeroing everything is globally better.
        y = np.array([1.4, 1.35])
        lam = np.array([1.0, 1.0])
        res = dpav(LQ12, lam, y)
        rep = oracle.exhaustive_partition_prox(LQ12, lam, y,
                                               candidate_objective=res.objective)
        assert np.allclose(rep.argmin, [0.0, 0.0])
        assert abs(rep.gap_vs_candidate) <= 1e-12
        # plain block_candidate-PAV keeps the nonzero local minimizer, strictly worse
        from sortedprox import isotonic
        part = isotonic.pav(y, lam, isotonic.nonconvex_rule(LQ12))
        xs = isotonic.flatten(part)
        pav_obj = oracle.sorted_objective_value(LQ12, lam, 1.0, xs, y)
        assert np.all(xs > 0)
        assert pav_obj > rep.objective + 1e-3

    def test_oracle_lower_bounds_feasible_assignments(self):
        rng = np.random.default_rng(1)
        from sortedprox import _scalar
        for _ in range(40):
            p = int(rng.integers(2, 7))
            y = np.sort(np.abs(rng.normal(0, 2, p)))[::-1].copy()
            lam = np.sort(rng.uniform(0, 2, p))[::-1].copy()
            rep = oracle.exhaustive_partition_prox(LQ12, lam, y)
            # random feasible blockwise candidate assignment
            cut = int(rng.integers(1, p + 1))
            x = np.zeros(p)
            v = _scalar.block_candidate(4, 0.5, y[:cut].mean(), lam[:cut].mean())
            x[:cut] = v
            obj = oracle.sorted_objective_value(LQ12, lam, 1.0, x, y)
            assert rep.objective <= obj + 1e-12

    def test_matches_dense_2d_grid(self):
        # dense-grid guard for the blockwise-candidate restriction
        rng = np.random.default_rng(2)
        for _ in range(6):
            y = np.sort(rng.uniform(0.2, 3.0, 2))[::-1].copy()
            lam = np.sort(rng.uniform(0.1, 1.5, 2))[::-1].copy()
            rep = oracle.exhaustive_partition_prox(LQ12, lam, y)
            _, grid_obj = oracle.grid2d_prox(LQ12, lam, y,
                                             z_max=float(y[0]) + 0.1, n=2000)
            assert rep.objective <= grid_obj + 1e-9
            assert rep.objective >= grid_obj - 5e-6  # grid resolution slack

    def test_weakly_convex_agrees_with_pav(self):
        from sortedprox import isotonic
        rng = np.random.default_rng(3)
        fams = [(PenaltyFamily.l1(), 1.0), (PenaltyFamily.mcp(2.0), 0.9),
                (PenaltyFamily.scad(3.7), 1.5), (PenaltyFamily.log_sum(1.0), 0.3)]
        for fam, eta in fams:
            for _ in range(30):
                p = int(rng.integers(1, 9))
                y = np.sort(np.abs(rng.normal(0, 2, p)))[::-1].copy()
                lam = np.sort(rng.uniform(0, 1.5, p))[::-1].copy()
                part = isotonic.pav(y, lam, isotonic.weakly_convex_rule(fam, eta))
                xs = isotonic.flatten(part)
                obj = oracle.sorted_objective_value(fam, lam, eta, xs, y)
                rep = oracle.exhaustive_partition_prox(fam, lam, y, eta=eta,
                                                       candidate_objective=obj)
                assert abs(rep.gap_vs_candidate) <= 1e-8

    def test_report_fields(self):
        y = np.array([2.0, 1.0, 0.5])
        lam = np.array([1.0, 0.5, 0.2])
        rep = oracle.exhaustive_partition_prox(LQ12, lam, y)
        assert rep.instances_checked >= 1
        assert math.isnan(rep.gap_vs_candidate)
        assert np.all(np.diff(rep.argmin) <= 0) and rep.argmin[-1] >= 0


class TestFiniteDiff:
    def test_linear_is_exact(self):
        # exact up to rounding of the difference quotient
        err = oracle.finite_diff_check(lambda z: 3.0 * z, lambda z: 3.0,
                                       1.0, 1e-6)
        assert err <= 1e-9

    def test_lq_and_log_sum(self):
        err = oracle.finite_diff_check(
            lambda z: penalty.value(LQ12, z, 1.0),
            lambda z: penalty.deriv(LQ12, z, 1.0), 1.0, 1e-6)
        assert err <= 1e-6
        err = oracle.finite_diff_check(
            lambda z: penalty.value(LOGSUM1, z, 1.0),
            lambda z: penalty.deriv(LOGSUM1, z, 1.0), 0.5, 1e-6)
        assert err <= 1e-6
