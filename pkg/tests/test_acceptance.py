"""Acceptance suite: one test per criterion, each printing a pass line.

Tolerances and scales are pinned here and must not be loosened; timed
criteria assert their wall-clock budgets.
"""

import math
import time

import numpy as np
import pytest

from sortedprox import _scalar, experiments, isotonic, oracle, penalty
from sortedprox.penalty import PenaltyFamily
from sortedprox.sorted_prox import (
    SortedPenalty,
    prox,
    verify_local_minimizer,
)

LQ12 = PenaltyFamily.lq(0.5)


def _report(name):
    print(f"[PASS] {name}")


def test_criterion_01_scalar_oracle_equivalence():
    start = time.monotonic()
    rng = np.random.default_rng(101)
    families = [PenaltyFamily.l1(), PenaltyFamily.mcp(2.0),
                PenaltyFamily.scad(3.7), PenaltyFamily.log_sum(1.0),
                PenaltyFamily.lq(0.3), PenaltyFamily.lq(0.5),
                PenaltyFamily.lq(0.67), PenaltyFamily.lq(0.8)]
    max_obj_gap = 0.0
    max_arg_gap = 0.0
    for i in range(1000):
        fam = families[i % len(families)]
        y = float(rng.uniform(0.0, 10.0))
        lam = float(rng.uniform(0.0, 5.0))
        res = penalty.scalar_prox(fam, y, lam)
        arg, obj = oracle.grid_scalar_prox(fam, y, lam, step=1e-4)
        gap = abs(res.objective - obj)
        assert gap <= 1e-8, (fam, y, lam, gap)
        max_obj_gap = max(max_obj_gap, gap)
        near_tie = False
        if fam.is_thresholded and lam > 0:
            big_t = penalty.global_min_threshold(fam, lam)
            near_tie = abs(y - big_t) <= 1e-3
        if not near_tie:
            agap = abs(res.value - arg)
            assert agap <= 1e-6, (fam, y, lam, agap)
            max_arg_gap = max(max_arg_gap, agap)
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    _report(f"criterion 1: scalar prox vs grid oracle over 1000 draws "
            f"(max objective gap {max_obj_gap:.2e}, max argmin gap "
            f"{max_arg_gap:.2e}, {elapsed:.1f}s < 30s)")


def test_criterion_02_threshold_identities():
    rng = np.random.default_rng(102)
    fams = [PenaltyFamily.log_sum(1.0), PenaltyFamily.log_sum(0.5),
            PenaltyFamily.lq(0.3), PenaltyFamily.lq(0.5),
            PenaltyFamily.lq(0.67), PenaltyFamily.lq(0.8)]
    for fam in fams:
        for _ in range(200):
            lam = float(rng.uniform(0.01, 8.0))
            m = penalty.concavity_boundary(fam, lam)
            d_at_m = (penalty.deriv(fam, m, 1.0) if m > 0
                      else penalty.deriv_at_zero(fam, 1.0))
            tau = penalty.local_min_threshold(fam, lam)
            assert abs(tau - (m + lam * d_at_m)) <= 1e-10
            big_t = penalty.global_min_threshold(fam, lam)
            assert tau <= big_t + 1e-12
            assert big_t <= lam * penalty.deriv_at_zero(fam, 1.0) + 1e-12
            rho = penalty.largest_local_min(fam, big_t, lam)
            tie = (penalty.scalar_objective(fam, rho, big_t, lam)
                   - penalty.scalar_objective(fam, 0.0, big_t, lam))
            assert abs(tie) <= 1e-9
    _report("criterion 2: threshold identities (tau formula 1e-10, "
            "tau <= T <= lam*psi0'(0), tie residual 1e-9; 200 draws x 6 "
            "family variants)")


def test_criterion_03_lq_closed_values():
    tau = penalty.local_min_threshold(LQ12, 1.0)
    big_t = penalty.global_min_threshold(LQ12, 1.0)
    assert abs(tau - 3.0 * 0.25 ** (2.0 / 3.0)) <= 1e-12
    assert abs(tau - 1.190551) <= 1e-6
    assert abs(big_t - 1.5) <= 1e-9
    res = penalty.scalar_prox(LQ12, 1.5, 1.0)
    assert res.tied
    assert abs(res.value - 1.0) <= 1e-9
    f0 = penalty.scalar_objective(LQ12, 0.0, 1.5, 1.0)
    f1 = penalty.scalar_objective(LQ12, 1.0, 1.5, 1.0)
    assert f0 == pytest.approx(1.125, abs=1e-12)
    assert f1 == pytest.approx(1.125, abs=1e-12)
    _report(f"criterion 3: lq(1/2) closed values tau(1)={tau:.9f}, "
            f"T(1)={big_t}, tie F(0)=F(1)=1.125")


def test_criterion_04_weakly_convex_exactness():
    start = time.monotonic()
    rng = np.random.default_rng(104)
    worst = 0.0
    for trial in range(500):
        p = int(rng.integers(1, 11))
        y = np.sort(np.abs(rng.normal(0.0, 2.0, p)))[::-1].copy()
        lam = np.sort(rng.uniform(0.0, 1.5, p))[::-1].copy()
        if trial % 2 == 0:
            gamma = float(rng.uniform(1.2, 4.0))
            fam = PenaltyFamily.mcp(gamma)
            eta = float(rng.uniform(0.3, 0.95)) * gamma
        else:
            fam = PenaltyFamily.log_sum(1.0)
            top = 1.0 / max(float(lam[0]), 1e-9)
            eta = float(rng.uniform(0.3, 0.95)) * min(top, 2.0)
        part = isotonic.pav(y, lam, isotonic.weakly_convex_rule(fam, eta))
        xs = isotonic.flatten(part)
        obj = oracle.sorted_objective_value(fam, lam, eta, xs, y)
        rep = oracle.exhaustive_partition_prox(fam, lam, y, eta=eta,
                                               candidate_objective=obj)
        assert abs(rep.gap_vs_candidate) <= 1e-8, (trial, rep.gap_vs_candidate)
        worst = max(worst, abs(rep.gap_vs_candidate))
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    _report(f"criterion 4: PAV = exhaustive oracle on 500 weakly convex "
            f"instances (max gap {worst:.2e}, {elapsed:.1f}s < 120s)")


def test_criterion_05_pav_outputs_are_local_minimizers():
    rng = np.random.default_rng(105)
    failures = 0
    for _ in range(500):
        p = int(rng.integers(2, 21))
        y = np.sort(np.abs(rng.normal(0.0, 2.5, p)))[::-1].copy()
        lam = np.sort(np.abs(rng.normal(0.0, 2.0, p)))[::-1].copy()
        part = isotonic.pav(y, lam, isotonic.nonconvex_rule(LQ12))
        ok, violations = verify_local_minimizer(LQ12, lam, y,
                                                isotonic.flatten(part))
        if not ok:
            failures += 1
    assert failures == 0
    _report("criterion 5: PAV output passes the local-minimizer certificate "
            "on 500 sorted-lq(1/2) instances, zero failures")


def test_criterion_06_prefix_search_recovers_global():
    cfg = experiments.apply_schema("dpav-stress", {"mode": "random"})
    _, rows, _ = experiments.run_dpav_stress(cfg)
    rows = [r for r in rows if r["mode"] == "random"]
    assert len(rows) == 10
    worst = max(abs(r["gap"]) for r in rows)
    assert worst <= 1e-9
    _report(f"criterion 6: prefix search matches the exhaustive oracle on "
            f"10 near-threshold seeds at p=10 (max gap {worst:.2e})")


def test_criterion_07_adversarial_merges_never_win():
    cfg = experiments.apply_schema("dpav-stress", {"mode": "adversarial"})
    _, rows, _ = experiments.run_dpav_stress(cfg)
    built = [r for r in rows if not math.isnan(r["gap"])]
    assert built, "no adversarial instances were constructed"
    worst = max(r["gap"] for r in built)
    assert worst <= 1e-9
    _report(f"criterion 7: prefix search beats the forced merge on all "
            f"{len(built)} adversarial 22-dim instances (worst gap "
            f"{worst:.2e})")


def test_criterion_08_denoising_error_ordering():
    start = time.monotonic()
    cfg = experiments.apply_schema("denoising", {})
    assert cfg["replicates"] == 200
    _, rows, _ = experiments.run_denoising(cfg)
    selected = {}
    for pen in ("slope", "smcp", "slq"):
        sub = [r for r in rows if r["penalty"] == pen]
        sub.sort(key=lambda r: r["r"])
        hit = next((r for r in sub if r["f1_mean"] >= 0.75), None)
        assert hit is not None, f"{pen} never reached F1 0.75"
        selected[pen] = hit
    assert selected["smcp"]["err_mean"] < selected["slope"]["err_mean"]
    assert selected["slq"]["err_mean"] < selected["slope"]["err_mean"]
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    _report(
        "criterion 8: denoising at matched F1>=0.75 - err slope="
        f"{selected['slope']['err_mean']:.3f}, smcp="
        f"{selected['smcp']['err_mean']:.3f}, slq="
        f"{selected['slq']['err_mean']:.3f} ({elapsed:.0f}s < 300s)")


def test_criterion_09_regression_false_positives_and_bias():
    cfg = experiments.apply_schema("regression", {})
    _, rows, _ = experiments.run_regression(cfg)
    grid = sorted({r["r"] for r in rows}, reverse=True)
    moderate = set(grid[2:-2])  # drop the two extreme strengths on each side
    by = {}
    for r in rows:
        by[(r["penalty"], r["r"])] = r
    for rv in moderate:
        fp_slope = by[("slope", rv)]["false_positives"]
        assert fp_slope >= by[("smcp", rv)]["false_positives"]
        assert fp_slope >= by[("slq", rv)]["false_positives"]

    def best_mad(pen):
        vals = [by[(pen, rv)]["mad_nonzero_support"] for rv in moderate]
        vals = [v for v in vals if not math.isnan(v)]
        return min(vals)

    assert best_mad("smcp") < best_mad("slope")
    assert best_mad("slq") < best_mad("slope")
    _report(
        "criterion 9: regression moderate regime - false positives "
        "slope >= sorted penalties rowwise; best magnitude deviation "
        f"slope={best_mad('slope'):.3f}, smcp={best_mad('smcp'):.3f}, "
        f"slq={best_mad('slq'):.3f}")


def test_criterion_10_mm_comparison():
    start = time.monotonic()
    cfg = experiments.apply_schema("mm-compare", {"datafit": "leastsquares"})
    _, rows, _ = experiments.run_mm_compare(cfg)
    final = {}
    iters = {}
    for r in rows:
        final[r["method"]] = r["objective"]
        iters[r["method"]] = r["iteration"]
    assert abs(final["pgd"] - final["mm_lca"]) <= 2e-5 * max(
        1.0, abs(final["pgd"]))
    gap_ls = abs(final["pgd"] - final["mm_lca"])

    cfg = experiments.apply_schema("mm-compare", {"datafit": "logistic"})
    _, rows, _ = experiments.run_mm_compare(cfg)
    for r in rows:
        iters[r["method"]] = r["iteration"]
    assert iters["pgd"] < iters["mm_lca"]
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    _report(
        f"criterion 10: MM comparison - least-squares final objectives agree "
        f"(gap {gap_ls:.2e} <= 2e-5), logistic iterations pgd="
        f"{iters['pgd']} < mm={iters['mm_lca']} ({elapsed:.1f}s < 60s)")


def test_criterion_11_structural_invariants():
    rng = np.random.default_rng(111)
    pen = SortedPenalty(LQ12, np.array([1.5, 1.0, 0.8, 0.8, 0.3, 0.1]))
    for _ in range(1000):
        y = rng.normal(0.0, 2.0, 6)
        if rng.uniform() < 0.4:
            y[rng.integers(6)] = y[rng.integers(6)] * rng.choice([-1.0, 1.0])
        x = prox(pen, y).x
        perm = rng.permutation(6)
        flips = rng.choice([-1.0, 1.0], 6)
        x2 = prox(pen, flips * y[perm]).x
        assert np.array_equal(x2, flips * x[perm])  # bit-exact equivariance
        assert np.all(x * y >= 0)  # sign preservation
        order = np.argsort(y, kind="stable")
        assert np.all(np.diff(x[order]) >= -1e-12)  # order preservation

    merge_checked = 0
    attempts = 0
    while merge_checked < 1000:
        attempts += 1
        assert attempts < 100000
        n1, n2 = rng.integers(1, 5, 2)
        y = np.sort(np.abs(rng.normal(0.0, 3.0, int(n1 + n2))))[::-1]
        lam = np.sort(np.abs(rng.normal(0.0, 2.0, int(n1 + n2))))[::-1]
        c1 = _scalar.block_candidate(4, 0.5, y[:n1].mean(), lam[:n1].mean())
        c2 = _scalar.block_candidate(4, 0.5, y[n1:].mean(), lam[n1:].mean())
        cm = _scalar.block_candidate(4, 0.5, y.mean(), lam.mean())
        assert cm <= max(c1, c2) + 1e-10
        if c1 < c2:
            assert c1 - 1e-10 <= cm <= c2 + 1e-10
            merge_checked += 1
    _report("criterion 11: structural invariants - bit-exact signed-"
            "permutation equivariance, sign/order preservation, merge "
            "ordering lemmas (1000 cases each, zero violations)")
