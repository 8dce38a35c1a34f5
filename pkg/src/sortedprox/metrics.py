"""Cluster-recovery metrics for the denoising and regression experiments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ClusterMetric:
    f1: float
    normalized_error: float


def f1_cluster(x_hat, x_star, value_tol: float = 1e-8) -> float:
    """F1 of pairwise same-cluster prediction between |x_hat| and |x_star|.

    Over unordered pairs i < j: true positives are pairs with equal ground
    truth magnitudes; predicted positives are pairs whose estimated
    magnitudes differ by at most ``value_tol``.  Returns 1 when neither
    vector has a positive pair.
    """
    a = np.abs(np.asarray(x_hat, dtype=np.float64))
    s = np.abs(np.asarray(x_star, dtype=np.float64))
    if a.shape != s.shape:
        raise ValueError("x_hat and x_star must have the same length")
    iu = np.triu_indices(a.size, k=1)
    truth = (np.abs(s[:, None] - s[None, :]) == 0.0)[iu]
    pred = (np.abs(a[:, None] - a[None, :]) <= value_tol)[iu]
    tp = int(np.sum(truth & pred))
    n_truth = int(np.sum(truth))
    n_pred = int(np.sum(pred))
    if n_truth == 0 and n_pred == 0:
        return 1.0
    if tp == 0:
        return 0.0
    precision = tp / n_pred
    recall = tp / n_truth
    return 2.0 * precision * recall / (precision + recall)


def normalized_error(x_hat, x_star) -> float:
    """||x_hat - x_star|| / ||x_star||."""
    x_hat = np.asarray(x_hat, dtype=np.float64)
    x_star = np.asarray(x_star, dtype=np.float64)
    return float(np.linalg.norm(x_hat - x_star) / np.linalg.norm(x_star))


def cluster_metric(x_hat, x_star, value_tol: float = 1e-8) -> ClusterMetric:
    return ClusterMetric(f1=f1_cluster(x_hat, x_star, value_tol),
                         normalized_error=normalized_error(x_hat, x_star))
