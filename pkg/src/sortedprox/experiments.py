"""Experiment runners behind the CLI.

Each runner takes a validated config dict and returns ``(columns, rows,
summary)``: the CSV schema, the table as a list of dicts of plain Python
scalars, and human-readable summary lines.  Identical config and seed produce
bit-identical tables; wall-clock quantities never enter a table.
"""

from __future__ import annotations

import csv
import math

import numpy as np

from . import datagen, metrics, oracle, solver
from ._scalar import LQ as _LQ
from ._scalar import block_candidate as _candidate
from ._scalar import local_min_threshold as _threshold
from .errors import ConfigurationError
from .penalty import PenaltyFamily
from .sorted_prox import SortedPenalty, dpav, prox, sorted_objective
from .solver import ProblemInstance

REQUIRED = object()


def _field(typ, default, help_text):
    return {"type": typ, "default": default, "help": help_text}


def _bool(raw):
    s = str(raw).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"not a boolean: {raw!r}")


SCHEMAS = {
    "denoising": {
        "seed": _field(int, 0, "master seed"),
        "replicates": _field(int, 200, "noisy samples per grid point"),
        "sigma": _field(float, 0.3, "noise standard deviation"),
        "n_grid": _field(int, 100, "geometric grid size for the strength r"),
        "r_min": _field(float, 2e-3, "smallest strength"),
        "r_max": _field(float, 0.5, "largest strength"),
        "mcp_gamma": _field(float, 2.0, "gamma of the sorted MCP penalty"),
        "lq_q": _field(float, 0.5, "exponent of the sorted lq penalty"),
        "lq_power": _field(float, 1.5, "weight-sequence power for lq"),
        "f1_threshold": _field(float, 0.75, "F1 level defining the selected r"),
        "value_tol": _field(float, 1e-8, "magnitude tolerance for F1 ties"),
        "shuffle": _field(_bool, False, "permute truth and noisy samples jointly"),
    },
    "regression": {
        "seed": _field(int, 0, "master seed"),
        "n": _field(int, 50, "rows of the design"),
        "p": _field(int, 100, "columns of the design"),
        "rho": _field(float, 0.98, "Toeplitz correlation"),
        "snr": _field(float, 7.0, "signal-to-noise ratio"),
        "n_grid": _field(int, 12, "strength grid size"),
        "r_min_ratio": _field(float, 1e-3, "grid lower bound / critical strength"),
        "mcp_gamma": _field(float, 1.2, "gamma of the sorted MCP penalty"),
        "lq_q": _field(float, 0.5, "exponent of the sorted lq penalty"),
        "tol": _field(float, 1e-6, "solver stopping tolerance"),
        "max_iter": _field(int, 2000, "solver iteration cap"),
        "accelerated": _field(_bool, True, "use FISTA"),
        "support_tol": _field(float, 1e-8, "nonzero threshold"),
    },
    "path": {
        "seed": _field(int, 0, "master seed (unused, kept for the schema)"),
        "dataset": _field(str, REQUIRED, "CSV path, header row, last column target"),
        "n_grid": _field(int, 50, "strength grid size"),
        "r_min_ratio": _field(float, 1e-3, "grid lower bound / critical strength"),
        "mcp_gamma": _field(float, 1.0, "gamma of the (sorted) MCP penalty"),
        "lq_q": _field(float, 0.5, "exponent of the sorted lq penalty"),
        "seq_power": _field(float, 0.25, "power of the sorted weight sequence"),
        "tol": _field(float, 1e-8, "solver stopping tolerance"),
        "max_iter": _field(int, 5000, "solver iteration cap"),
    },
    "mm-compare": {
        "seed": _field(int, 0, "master seed"),
        "datafit": _field(str, "leastsquares", "leastsquares or logistic"),
        "n": _field(int, 150, "rows of the design"),
        "d": _field(int, 50, "columns of the design"),
        "rho": _field(float, 0.4, "Toeplitz correlation"),
        "snr": _field(float, 10.0, "SNR of the regression target"),
        "gamma": _field(float, 1.1, "MCP gamma"),
        "alpha_scale": _field(float, 0.5, "strength as a fraction of the critical value"),
        "flip_frac": _field(float, 0.1, "label flips for the logistic target"),
        "tol": _field(float, 1e-5, "stopping tolerance on the loss difference"),
        "max_iter": _field(int, 50000, "iteration cap"),
    },
    "dpav-stress": {
        "seed": _field(int, 0, "master seed"),
        "mode": _field(str, "both", "random, adversarial or both"),
        "lq_q": _field(float, 0.5, "exponent of the lq penalty"),
        "p_random": _field(int, 10, "dimension of the random instances"),
        "n_seeds": _field(int, 10, "random replicates"),
        "lam_max": _field(float, 2.0, "top of the linear weight sequence"),
        "lam_grid_n": _field(int, 61, "grid points over the block-1 weight range"),
        "y_grid_n": _field(int, 61, "grid points over the block-1 input range"),
    },
    "prox-check": {
        "seed": _field(int, 0, "master seed"),
        "n_scalar": _field(int, 200, "random scalar prox checks"),
        "n_vector": _field(int, 40, "random vector prox checks per family"),
        "p_vector": _field(int, 6, "dimension of the vector checks"),
        "step": _field(float, 1e-4, "scalar grid oracle resolution"),
    },
}


def apply_schema(experiment: str, raw: dict) -> dict:
    """Validate raw string config values against the experiment schema."""
    if experiment not in SCHEMAS:
        raise ConfigurationError(f"unknown experiment {experiment!r}")
    schema = SCHEMAS[experiment]
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")
    cfg = {}
    for key, spec in schema.items():
        if key in raw:
            try:
                cfg[key] = spec["type"](raw[key])
            except (TypeError, ValueError) as exc:
                raise ConfigurationError(f"bad value for {key}: {exc}") from exc
        elif spec["default"] is REQUIRED:
            raise ConfigurationError(f"missing required config key: {key}")
        else:
            cfg[key] = spec["default"]
    return cfg


# ---------------------------------------------------------------------------
# Denoising
# ---------------------------------------------------------------------------

_DENOISE_VALUES = (7.0, -5.0, 3.0, -1.0)
_DENOISE_SIZES = (7, 7, 7, 7)
_DENOISE_P = 28


def _denoise_penalties(cfg):
    i = np.arange(1, _DENOISE_P + 1, dtype=np.float64)
    lin = _DENOISE_P - i
    pow_seq = (_DENOISE_P - i) ** cfg["lq_power"]
    return [
        ("slope", PenaltyFamily.l1(), lin),
        ("smcp", PenaltyFamily.mcp(cfg["mcp_gamma"]), lin),
        ("slq", PenaltyFamily.lq(cfg["lq_q"]), pow_seq),
    ]


def run_denoising(cfg):
    """Prox denoising of the clustered signal over a strength grid.

    With ``shuffle`` the noisy samples and the ground truth are permuted
    jointly; every reported metric is invariant to that permutation.
    """
    x_star = datagen.gen_clustered_signal(
        _DENOISE_P, _DENOISE_VALUES, _DENOISE_SIZES)
    streams = np.random.SeedSequence(cfg["seed"]).spawn(cfg["replicates"])
    noisy = np.stack([
        x_star + cfg["sigma"] * np.random.default_rng(s).standard_normal(_DENOISE_P)
        for s in streams])
    if cfg["shuffle"]:
        perm = np.random.default_rng(cfg["seed"]).permutation(_DENOISE_P)
        x_star = x_star[perm]
        noisy = noisy[:, perm]
    grid = np.geomspace(cfg["r_min"], cfg["r_max"], cfg["n_grid"])

    rows = []
    summary = []
    for name, family, seq in _denoise_penalties(cfg):
        selected = None
        for r in grid:
            pen = SortedPenalty(family, float(r) * seq, eta=1.0)
            f1s = np.empty(cfg["replicates"])
            errs = np.empty(cfg["replicates"])
            for j in range(cfg["replicates"]):
                xh = prox(pen, noisy[j]).x
                f1s[j] = metrics.f1_cluster(xh, x_star, cfg["value_tol"])
                errs[j] = metrics.normalized_error(xh, x_star)
            rows.append({
                "penalty": name,
                "r": float(r),
                "f1_mean": float(f1s.mean()),
                "f1_std": float(f1s.std()),
                "err_mean": float(errs.mean()),
                "err_std": float(errs.std()),
            })
            if selected is None and f1s.mean() >= cfg["f1_threshold"]:
                selected = (float(r), float(errs.mean()), float(f1s.mean()))
        if selected is None:
            summary.append(f"{name}: no strength reached F1 >= "
                           f"{cfg['f1_threshold']}")
        else:
            summary.append(
                f"{name}: smallest r with mean F1 >= {cfg['f1_threshold']} "
                f"is r={selected[0]:.6g} (err={selected[1]:.6g}, "
                f"f1={selected[2]:.6g})")
    columns = ["penalty", "r", "f1_mean", "f1_std", "err_mean", "err_std"]
    return columns, rows, summary


# ---------------------------------------------------------------------------
# Regression
# ---------------------------------------------------------------------------

def _oscar_sequence(p, power):
    i = np.arange(1, p + 1, dtype=np.float64)
    return i ** power - (i - 1.0) ** power


def _critical_strength(g, seq):
    """Smallest r with x = 0 optimal for the sorted-l1 penalty r*seq."""
    gs = np.sort(np.abs(g))[::-1]
    return float(np.max(np.cumsum(gs) / np.cumsum(seq)))


def run_regression(cfg):
    """Penalized least squares on the correlated Gaussian design."""
    n, p = cfg["n"], cfg["p"]
    if p < 55:
        raise ConfigurationError("p must be >= 55 (true support spans 50..55)")
    A = datagen.gen_toeplitz_design(n, p, cfg["rho"], seed=cfg["seed"])
    x_star = np.zeros(p)
    x_star[0:10] = 5.0
    x_star[49:55] = 5.0
    b = datagen.add_noise_snr(A @ x_star, cfg["snr"], seed=cfg["seed"] + 1)
    seq = _oscar_sequence(p, 2.0 / 3.0)
    r_max = 1.05 * _critical_strength(A.T @ b, seq)
    grid = np.geomspace(r_max * cfg["r_min_ratio"], r_max, cfg["n_grid"])
    support = np.abs(x_star) > 0

    penalties = [
        ("slope", PenaltyFamily.l1()),
        ("smcp", PenaltyFamily.mcp(cfg["mcp_gamma"])),
        ("slq", PenaltyFamily.lq(cfg["lq_q"])),
    ]
    columns = (["penalty", "r", "support_size", "false_positives",
                "norm_error", "mad_true_support", "mad_nonzero_support"]
               + [f"coef_{j + 1:03d}" for j in range(p)])
    rows = []
    for name, family in penalties:
        for r in grid[::-1]:
            pen = SortedPenalty(family, float(r) * seq)
            inst = ProblemInstance(A, b, "leastsquares", pen)
            x, _ = solver.pgd(inst, tol=cfg["tol"], max_iter=cfg["max_iter"],
                              accelerated=cfg["accelerated"])
            nz = np.abs(x) > cfg["support_tol"]
            kept = support & nz
            row = {
                "penalty": name,
                "r": float(r),
                "support_size": int(nz.sum()),
                "false_positives": int(np.sum(nz & ~support)),
                "norm_error": metrics.normalized_error(x, x_star),
                "mad_true_support": float(np.mean(np.abs(x[support] - 5.0))),
                "mad_nonzero_support": (
                    float(np.mean(np.abs(np.abs(x[kept]) - 5.0)))
                    if kept.any() else math.nan),
            }
            for j in range(p):
                row[f"coef_{j + 1:03d}"] = float(x[j])
            rows.append(row)
    summary = [f"critical strength r_max={r_max:.6g} "
               f"({cfg['n_grid']} geometric points down to ratio "
               f"{cfg['r_min_ratio']:g})"]
    return columns, rows, summary


# ---------------------------------------------------------------------------
# Solution paths on a user-supplied dataset
# ---------------------------------------------------------------------------

def load_dataset_csv(path):
    """Read a numeric CSV with a header; last column is the target."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigurationError(f"{path}: empty file") from None
        data = []
        for lineno, parts in enumerate(reader, start=2):
            if not parts:
                continue
            if len(parts) != len(header):
                raise ConfigurationError(
                    f"{path}:{lineno}: expected {len(header)} fields, "
                    f"got {len(parts)}")
            try:
                data.append([float(v) for v in parts])
            except ValueError as exc:
                raise ConfigurationError(f"{path}:{lineno}: {exc}") from exc
    if not data:
        raise ConfigurationError(f"{path}: no data rows")
    arr = np.asarray(data, dtype=np.float64)
    if arr.shape[1] < 2:
        raise ConfigurationError(f"{path}: need at least one feature column")
    return header[:-1], arr[:, :-1], arr[:, -1]


def _standardize(X, yt):
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    if np.any(std == 0.0):
        raise ConfigurationError("constant feature column cannot be standardized")
    return (X - mean) / std, yt - yt.mean()


def run_path(cfg):
    """Coefficient paths for convex/nonconvex, sorted/unsorted penalties."""
    names, X, yt = load_dataset_csv(cfg["dataset"])
    A, b = _standardize(X, yt)
    d = A.shape[1]
    const_seq = np.ones(d)
    oscar_seq = _oscar_sequence(d, cfg["seq_power"])
    penalties = [
        ("lasso", PenaltyFamily.l1(), const_seq),
        ("mcp", PenaltyFamily.mcp(cfg["mcp_gamma"]), const_seq),
        ("slope", PenaltyFamily.l1(), oscar_seq),
        ("smcp", PenaltyFamily.mcp(cfg["mcp_gamma"]), oscar_seq),
        ("slq", PenaltyFamily.lq(cfg["lq_q"]), oscar_seq),
    ]
    g = A.T @ b
    columns = ["penalty", "r"] + [f"coef_{j + 1:03d}" for j in range(d)]
    rows = []
    for name, family, seq in penalties:
        r_max = 1.05 * _critical_strength(g, seq)
        grid = np.geomspace(r_max * cfg["r_min_ratio"], r_max, cfg["n_grid"])
        for r in grid[::-1]:
            pen = SortedPenalty(family, float(r) * seq)
            inst = ProblemInstance(A, b, "leastsquares", pen)
            x, _ = solver.pgd(inst, tol=cfg["tol"], max_iter=cfg["max_iter"],
                              accelerated=True)
            row = {"penalty": name, "r": float(r)}
            for j in range(d):
                row[f"coef_{j + 1:03d}"] = float(x[j])
            rows.append(row)
    summary = [f"dataset: {cfg['dataset']} ({A.shape[0]} rows, {d} features: "
               f"{', '.join(names)})"]
    return columns, rows, summary


# ---------------------------------------------------------------------------
# MM baseline comparison
# ---------------------------------------------------------------------------

def run_mm_compare(cfg):
    """Direct prox-gradient vs the MM baseline on the same sorted-MCP problem."""
    if cfg["datafit"] not in ("leastsquares", "logistic"):
        raise ConfigurationError("datafit must be leastsquares or logistic")
    n, d = cfg["n"], cfg["d"]
    A = datagen.gen_toeplitz_design(n, d, cfg["rho"], seed=cfg["seed"])
    nnz = max(2, int(round(0.4 * d)))
    x_star = np.zeros(d)
    x_star[:nnz // 2] = 0.5
    x_star[nnz // 2:nnz] = -0.5
    if cfg["datafit"] == "leastsquares":
        b = datagen.add_noise_snr(A @ x_star, cfg["snr"], seed=cfg["seed"] + 1)
        scale = 1.0
    else:
        b = np.sign(A @ x_star)
        b[b == 0.0] = 1.0
        rng = np.random.default_rng(cfg["seed"] + 1)
        flips = rng.choice(n, max(1, int(round(cfg["flip_frac"] * n))),
                           replace=False)
        b[flips] *= -1.0
        scale = 1.0 / n
    alpha = cfg["alpha_scale"] * float(np.max(np.abs(A.T @ b))) * scale
    i = np.arange(1, d + 1, dtype=np.float64)
    lams = alpha * (d - i) / d
    pen = SortedPenalty(PenaltyFamily.mcp(cfg["gamma"]), lams)
    inst = ProblemInstance(A, b, cfg["datafit"], pen)

    x_pgd, tr_pgd = solver.pgd(inst, tol=cfg["tol"], max_iter=cfg["max_iter"])
    x_mm, tr_mm = solver.mm_lca_smcp(inst, tol=cfg["tol"],
                                     max_iter=cfg["max_iter"])
    columns = ["method", "iteration", "objective", "datafit_value",
               "penalty_value"]
    rows = []
    for method, tr in (("pgd", tr_pgd), ("mm_lca", tr_mm)):
        for k in range(len(tr)):
            rows.append({
                "method": method,
                "iteration": int(tr.iterations[k]),
                "objective": float(tr.objective[k]),
                "datafit_value": float(tr.datafit_value[k]),
                "penalty_value": float(tr.penalty_value[k]),
            })
    summary = [
        f"pgd: {len(tr_pgd) - 1} iterations, final objective "
        f"{tr_pgd.objective[-1]:.10g}",
        f"mm_lca: {len(tr_mm) - 1} iterations, final objective "
        f"{tr_mm.objective[-1]:.10g}",
    ]
    return columns, rows, summary


# ---------------------------------------------------------------------------
# Prefix-search stress test
# ---------------------------------------------------------------------------

def run_dpav_stress(cfg):
    """Random and adversarial stress of the prefix search vs references."""
    if cfg["mode"] not in ("random", "adversarial", "both"):
        raise ConfigurationError("mode must be random, adversarial or both")
    family = PenaltyFamily.lq(cfg["lq_q"])
    columns = ["mode", "label", "dpav_objective", "reference_objective",
               "gap", "detail"]
    rows = []
    summary = []

    if cfg["mode"] in ("random", "both"):
        p = cfg["p_random"]
        i = np.arange(1, p + 1, dtype=np.float64)
        lams = cfg["lam_max"] * (p - i) / p
        from ._scalar import global_min_threshold as _T
        t_vals = np.array([_T(_LQ, cfg["lq_q"], float(l)) for l in lams])
        streams = np.random.SeedSequence(cfg["seed"]).spawn(cfg["n_seeds"])
        worst = 0.0
        for si, s in enumerate(streams):
            rng = np.random.default_rng(s)
            y_raw = t_vals + rng.normal(-0.3, 1.0, p)
            y = np.sort(np.abs(y_raw))[::-1].copy()
            res = dpav(family, lams, y)
            rep = oracle.exhaustive_partition_prox(
                family, lams, y, candidate_objective=res.objective)
            gap = float(rep.gap_vs_candidate)
            worst = max(worst, gap)
            rows.append({
                "mode": "random", "label": f"seed_{si}",
                "dpav_objective": float(res.objective),
                "reference_objective": float(rep.objective),
                "gap": gap,
                "detail": f"assignments_checked={rep.instances_checked}",
            })
        summary.append(f"random mode: max objective gap vs exhaustive oracle "
                       f"= {worst:.3e} over {cfg['n_seeds']} seeds")

    if cfg["mode"] in ("adversarial", "both"):
        q = cfg["lq_q"]
        lam_b2 = 1.0
        thr_b2 = _threshold(_LQ, q, lam_b2)
        rng = np.random.default_rng(cfg["seed"] + 1)
        lam_axis = np.linspace(50.0, 200.0, cfg["lam_grid_n"])
        y_axis = np.linspace(0.0, 60.0, cfg["y_grid_n"])
        n_block = 20
        worst = -math.inf
        built = 0
        for t in (0.3, 0.5, 0.7, 0.9):
            n2 = int(round(t * n_block))
            n1 = n_block - n2
            for mult in (5, 10, 15, 20, 25):
                ybar2 = mult * thr_b2
                cand_b2 = _candidate(_LQ, q, ybar2, lam_b2)
                hits = []
                for lam1 in lam_axis:
                    for y1 in y_axis:
                        if y1 < ybar2 or lam1 < lam_b2:
                            continue
                        cand_b1 = _candidate(_LQ, q, y1, lam1)
                        ybm = (n1 * y1 + n2 * ybar2) / n_block
                        lbm = (n1 * lam1 + n2 * lam_b2) / n_block
                        cand_merged = _candidate(_LQ, q, ybm, lbm)
                        if cand_b1 >= cand_b2 >= cand_merged:
                            hits.append((float(y1), float(lam1)))
                label = f"t_{t}_mult_{mult}"
                if not hits:
                    rows.append({
                        "mode": "adversarial", "label": label,
                        "dpav_objective": math.nan,
                        "reference_objective": math.nan,
                        "gap": math.nan,
                        "detail": "region_size=0",
                    })
                    continue
                y1, lam1 = hits[rng.integers(len(hits))]
                y = np.concatenate(([y1], np.full(n1, y1), np.full(n2, ybar2),
                                    [ybar2 / 2.0]))
                lam = np.concatenate(([lam1 + 0.1], np.full(n1, lam1),
                                      np.full(n2, lam_b2), [0.0]))
                res = dpav(family, lam, y)
                x_forced = np.empty_like(y)
                x_forced[0] = _candidate(_LQ, q, y1, lam1 + 0.1)
                ybm = (n1 * y1 + n2 * ybar2) / n_block
                lbm = (n1 * lam1 + n2 * lam_b2) / n_block
                x_forced[1:1 + n_block] = _candidate(_LQ, q, ybm, lbm)
                x_forced[-1] = ybar2 / 2.0
                forced_obj = sorted_objective(
                    SortedPenalty(family, lam), x_forced, y)
                feasible = bool(np.all(np.diff(x_forced) <= 0.0))
                gap = float(res.objective - forced_obj)
                worst = max(worst, gap)
                built += 1
                rows.append({
                    "mode": "adversarial", "label": label,
                    "dpav_objective": float(res.objective),
                    "reference_objective": float(forced_obj),
                    "gap": gap,
                    "detail": (f"region_size={len(hits)} y1={y1:.6g} "
                               f"lam1={lam1:.6g} forced_feasible={feasible}"),
                })
        summary.append(
            f"adversarial mode: {built} instances built, worst "
            f"(dpav - forced merge) objective gap = {worst:.3e}")
    return columns, rows, summary


# ---------------------------------------------------------------------------
# Oracle self-check
# ---------------------------------------------------------------------------

def run_prox_check(cfg):
    """Fast scalar/vector prox paths against the brute-force oracles."""
    from .penalty import scalar_prox

    rng = np.random.default_rng(cfg["seed"])
    fams = [PenaltyFamily.l1(), PenaltyFamily.mcp(2.0), PenaltyFamily.scad(3.7),
            PenaltyFamily.log_sum(1.0), PenaltyFamily.lq(0.5),
            PenaltyFamily.lq(0.67)]
    columns = ["check", "family", "instances", "max_objective_gap",
               "max_argmin_gap", "passed"]
    rows = []

    for fam in fams:
        label = fam.kind if fam.param == 0.0 else f"{fam.kind}({fam.param:g})"
        max_obj = 0.0
        max_arg = 0.0
        for _ in range(cfg["n_scalar"]):
            y = float(rng.uniform(0.0, 10.0))
            lam = float(rng.uniform(0.0, 5.0))
            res = scalar_prox(fam, y, lam)
            arg, obj = oracle.grid_scalar_prox(fam, y, lam, step=cfg["step"])
            max_obj = max(max_obj, abs(res.objective - obj))
            if not (fam.is_thresholded and res.tied):
                max_arg = max(max_arg, abs(res.value - arg))
        rows.append({
            "check": "scalar_vs_grid", "family": label,
            "instances": cfg["n_scalar"],
            "max_objective_gap": float(max_obj),
            "max_argmin_gap": float(max_arg),
            "passed": bool(max_obj <= 1e-8),
        })

    vec_cases = [
        (PenaltyFamily.lq(0.5), None),
        (PenaltyFamily.mcp(2.0), 0.9),
        (PenaltyFamily.log_sum(1.0), None),
    ]
    for fam, eta in vec_cases:
        max_obj = 0.0
        p = cfg["p_vector"]
        for _ in range(cfg["n_vector"]):
            y = np.sort(np.abs(rng.normal(0.0, 2.0, p)))[::-1].copy()
            lams = np.sort(rng.uniform(0.0, 2.0, p))[::-1].copy()
            use_eta = eta
            if use_eta is None:
                use_eta = 1.0
            pen = SortedPenalty(fam, lams, eta=use_eta)
            res = prox(pen, y)
            rep = oracle.exhaustive_partition_prox(
                fam, lams, y, eta=use_eta, candidate_objective=res.objective)
            max_obj = max(max_obj, float(rep.gap_vs_candidate))
        rows.append({
            "check": "vector_vs_exhaustive", "family": fam.kind,
            "instances": cfg["n_vector"],
            "max_objective_gap": float(max_obj),
            "max_argmin_gap": math.nan,
            "passed": bool(max_obj <= 1e-8),
        })
    summary = [f"{r['check']}/{r['family']}: max objective gap "
               f"{r['max_objective_gap']:.3e} "
               f"({'pass' if r['passed'] else 'FAIL'})" for r in rows]
    return columns, rows, summary


RUNNERS = {
    "denoising": run_denoising,
    "regression": run_regression,
    "path": run_path,
    "mm-compare": run_mm_compare,
    "dpav-stress": run_dpav_stress,
    "prox-check": run_prox_check,
}
