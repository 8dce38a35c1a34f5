import csv

import numpy as np
import pytest

from sortedprox import datagen


@pytest.fixture()
def synthetic_dataset_csv(tmp_path):
    """Small correlated regression CSV: header row, last column target."""
    rng = np.random.default_rng(42)
    X = datagen.gen_toeplitz_design(120, 10, 0.6, seed=5)
    beta = np.array([20.0, -12.0, 0.0, 8.0, 0.0, 0.0, 5.0, 0.0, -3.0, 0.0])
    y = X @ beta + rng.standard_normal(120) * 4.0
    path = tmp_path / "dataset.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i}" for i in range(10)] + ["target"])
        for i in range(120):
            writer.writerow(list(X[i]) + [y[i]])
    return str(path)


def sorted_abs(rng, p, scale=2.0):
    """Random nonnegative non-increasing vector."""
    return np.sort(np.abs(rng.normal(0.0, scale, p)))[::-1].copy()


def sorted_weights(rng, p, scale=2.0):
    """Random nonnegative non-increasing weight sequence."""
    return np.sort(rng.uniform(0.0, scale, p))[::-1].copy()
