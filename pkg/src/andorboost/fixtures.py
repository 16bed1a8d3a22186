"""Small synthetic datasets bundled with the package.

The CSV files under ``andorboost/data`` are produced by the generators
below; regenerate them with ``python -m andorboost.fixtures``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from .dataset import Dataset, SplitSpec, load_csv

__all__ = ["FIXTURES", "make_noisy_xor", "make_two_conjunctions", "load_fixture",
           "fixture_split", "fixture_to_csv"]


def make_noisy_xor(n_samples=800, n_noise=4, spread=0.5, flip=0.05, seed=0) -> Dataset:
    """xor on the first two features, irrelevant Gaussian features, label flips."""
    rng = np.random.default_rng(seed)
    quadrant = rng.integers(0, 4, n_samples)
    centers = np.array([[1, 1], [-1, -1], [1, -1], [-1, 1]], dtype=np.float64)
    X2 = centers[quadrant] + rng.normal(scale=spread, size=(n_samples, 2))
    noise = rng.normal(size=(n_samples, n_noise))
    y = np.where(X2[:, 0] * X2[:, 1] > 0, 1, -1)
    y = np.where(rng.random(n_samples) < flip, -y, y)
    names = ("x1", "x2") + tuple(f"noise{i + 1}" for i in range(n_noise))
    return Dataset(np.column_stack([X2, noise]), y, names, "noisy_xor")


def make_two_conjunctions(n_samples=800, n_features=8, flip=0.05, seed=1) -> Dataset:
    """``(x1 > 0.2 and x2 > -0.3) or (x3 < 0 and x4 > 0.1)`` on uniform features."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1.0, 1.0, size=(n_samples, n_features))
    pos = ((X[:, 0] > 0.2) & (X[:, 1] > -0.3)) | ((X[:, 2] < 0.0) & (X[:, 3] > 0.1))
    y = np.where(pos, 1, -1)
    y = np.where(rng.random(n_samples) < flip, -y, y)
    return Dataset(X, y, tuple(f"f{i + 1}" for i in range(n_features)), "two_conjunctions")


# name -> (generator, (n_train, n_test))
FIXTURES = {
    "noisy_xor": (make_noisy_xor, (600, 200)),
    "two_conjunctions": (make_two_conjunctions, (600, 200)),
}

LABELS = {"-1": -1, "1": 1}


def fixture_to_csv(data: Dataset) -> str:
    header = ",".join(data.feature_names) + ",label"
    lines = [header]
    for row, label in zip(data.features, data.labels):
        lines.append(",".join(repr(float(v)) for v in row) + f",{int(label)}")
    return "\n".join(lines) + "\n"


def _path(name: str):
    return resources.files("andorboost") / "data" / f"{name}.csv"


def load_fixture(name: str) -> Dataset:
    """Load a bundled fixture CSV (label column ``label``, values -1/1)."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}")
    with resources.as_file(_path(name)) as p:
        return load_csv(p, "label", LABELS, has_header=True, name=name)


def fixture_split(name: str, seed: int = 0) -> SplitSpec:
    n_train, n_test = FIXTURES[name][1]
    return SplitSpec(n_train, n_test, seed)


def _regenerate(directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, (gen, _) in FIXTURES.items():
        (directory / f"{name}.csv").write_text(fixture_to_csv(gen()))


if __name__ == "__main__":
    _regenerate(Path(__file__).parent / "data")
