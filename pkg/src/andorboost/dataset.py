"""Sample/label containers, CSV ingestion, the xor generator and seeded splits."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping

import numpy as np

__all__ = [
    "DataError",
    "ParseError",
    "LabelMappingError",
    "Dataset",
    "SplitSpec",
    "SPLIT_PRESETS",
    "load_csv",
    "read_feature_csv",
    "parse_label_mapping",
    "make_xor",
    "split",
    "uniform_weights",
    "normalize_weights",
    "derive_seed",
]


class DataError(ValueError):
    """Invalid dataset contents or arguments."""


class ParseError(DataError):
    """A CSV row could not be parsed."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class LabelMappingError(DataError):
    """A label token has no entry in the label mapping."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """Dense feature matrix with labels in {-1, +1}.

    Arrays are copied and frozen on construction, so a ``Dataset`` can be
    shared freely between threads and processes.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        X = np.array(self.features, dtype=np.float64)
        y = np.array(self.labels)
        if X.ndim != 2:
            raise DataError(f"features must be 2-D, got shape {X.shape}")
        n, d = X.shape
        if n < 1 or d < 1:
            raise DataError(f"need at least one sample and one feature, got {X.shape}")
        if y.shape != (n,):
            raise DataError(f"labels must have shape ({n},), got {y.shape}")
        if not np.all(np.isin(y, (-1, 1))):
            raise DataError("labels must be -1 or +1")
        if not np.all(np.isfinite(X)):
            raise DataError("features must be finite")
        names = self.feature_names
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != d:
                raise DataError(f"expected {d} feature names, got {len(names)}")
        object.__setattr__(self, "features", _readonly(X))
        object.__setattr__(self, "labels", _readonly(y.astype(np.int8)))
        object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def __len__(self) -> int:
        return self.n_samples

    def subset(self, index) -> "Dataset":
        index = np.asarray(index)
        return Dataset(self.features[index], self.labels[index], self.feature_names, self.name)

    def with_labels(self, labels) -> "Dataset":
        return Dataset(self.features, labels, self.feature_names, self.name)

    @cached_property
    def sorted_view(self) -> "SortedFeatures":
        # Weight-independent, so computed once and reused by every stump fit.
        return SortedFeatures.from_features(self.features)


@dataclass(frozen=True, eq=False)
class SortedFeatures:
    """Per-column sort order and the candidate threshold grid.

    Row ``k`` of ``thresholds``/``valid`` describes the split that puts the
    ``k`` smallest values of a column on the low side: ``k = 0`` and
    ``k = n`` are the two sentinels that yield constant classifiers.
    """

    order: np.ndarray       # (n, d) argsort of each column
    thresholds: np.ndarray  # (n + 1, d)
    valid: np.ndarray       # (n + 1, d) bool

    @classmethod
    def from_features(cls, X: np.ndarray) -> "SortedFeatures":
        n, d = X.shape
        order = np.argsort(X, axis=0, kind="stable")
        v = np.take_along_axis(X, order, axis=0)
        lo, hi = v[:-1], v[1:]
        mid = lo + (hi - lo) / 2.0
        # a midpoint that rounds onto the lower value would put it on the GE side
        mid = np.where((mid > lo) & (mid <= hi), mid, hi)
        low = v[0] - np.maximum(1.0, np.abs(v[0]))
        high = v[-1] + np.maximum(1.0, np.abs(v[-1]))
        thresholds = np.vstack([low, mid, high])
        valid = np.ones((n + 1, d), dtype=bool)
        valid[1:n] = lo < hi
        return cls(_readonly(order), _readonly(thresholds), _readonly(valid))


@dataclass(frozen=True)
class SplitSpec:
    n_train: int
    n_test: int
    seed: int = 0

    def __post_init__(self):
        if self.n_train < 1 or self.n_test < 1:
            raise DataError("n_train and n_test must both be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DataError("seed must be a 64-bit unsigned integer")

    def check(self, n_samples: int) -> None:
        if self.n_train + self.n_test > n_samples:
            raise DataError(
                f"split {self.n_train}+{self.n_test} exceeds {n_samples} samples"
            )

    def with_seed(self, seed: int) -> "SplitSpec":
        return SplitSpec(self.n_train, self.n_test, seed)


# Train/test sizes of the four UCI benchmarks.
SPLIT_PRESETS: dict[str, tuple[int, int]] = {
    "cancer": (630, 69),
    "ion": (315, 36),
    "ocr49": (1000, 5000),
    "splice": (1000, 2175),
}


def parse_label_mapping(text: str) -> dict[str, int]:
    """Parse ``"raw1=-1,raw2=+1"`` into ``{"raw1": -1, "raw2": 1}``."""
    mapping: dict[str, int] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        raw, sep, value = item.rpartition("=")
        if not sep or not raw.strip():
            raise LabelMappingError(f"bad label mapping entry {item!r}, expected raw=+1 or raw=-1")
        value = value.strip()
        if value in ("+1", "1"):
            mapping[raw.strip()] = 1
        elif value == "-1":
            mapping[raw.strip()] = -1
        else:
            raise LabelMappingError(f"label {raw!r} must map to +1 or -1, not {value!r}")
    if not mapping:
        raise LabelMappingError("empty label mapping")
    return mapping


def load_csv(
    path,
    label_column: int | str = -1,
    label_mapping: Mapping[str, int] | str | None = None,
    has_header: bool = False,
    name: str | None = None,
) -> Dataset:
    """Read a numeric CSV file into a :class:`Dataset`.

    Parameters
    ----------
    path : path-like
        Comma-separated file; an optional single header line.
    label_column : int or str
        Column index (negative counts from the end) or header name.
    label_mapping : mapping or str
        Raw label token to -1/+1.  A string is parsed with
        :func:`parse_label_mapping`.  Required: labels are never inferred.
    has_header : bool
        Treat the first line as column names.

    Raises
    ------
    ParseError
        Wrong column count or a non-numeric feature, with the 1-based row
        number in the file.
    LabelMappingError
        A label token missing from ``label_mapping``.
    """
    if label_mapping is None:
        raise LabelMappingError("a label mapping is required")
    if isinstance(label_mapping, str):
        label_mapping = parse_label_mapping(label_mapping)
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [(i, r) for i, r in enumerate(csv.reader(fh), start=1) if r and any(c.strip() for c in r)]
    header = None
    if has_header:
        if not rows:
            raise ParseError("missing header line", 1)
        header = [c.strip() for c in rows[0][1]]
        rows = rows[1:]
    if not rows:
        raise ParseError("no data rows")

    width = len(header) if header is not None else len(rows[0][1])
    if isinstance(label_column, str):
        if header is None:
            if label_column.lstrip("-").isdigit():
                label_column = int(label_column)
            else:
                raise DataError("label column given by name but the file has no header")
        else:
            if label_column not in header:
                raise DataError(f"no column named {label_column!r} in header")
            label_column = header.index(label_column)
    if not -width <= label_column < width:
        raise DataError(f"label column {label_column} out of range for {width} columns")
    label_column %= width

    features = np.empty((len(rows), width - 1), dtype=np.float64)
    labels = np.empty(len(rows), dtype=np.int8)
    for r, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", lineno)
        token = row[label_column].strip()
        try:
            labels[r] = label_mapping[token]
        except KeyError:
            raise LabelMappingError(f"row {lineno}: label {token!r} not in mapping") from None
        values = row[:label_column] + row[label_column + 1:]
        for c, cell in enumerate(values):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"non-numeric value {cell.strip()!r} in column {c + (c >= label_column)}", lineno) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite value {cell.strip()!r}", lineno)
            features[r, c] = v
    names = None
    if header is not None:
        names = header[:label_column] + header[label_column + 1:]
    return Dataset(features, labels, names, name if name is not None else path.stem)


def read_feature_csv(path, has_header: bool = False, drop_column: int | str | None = None) -> np.ndarray:
    """Read an unlabeled numeric CSV into a feature matrix.

    ``drop_column`` (index or header name) is skipped, e.g. a label column
    that should not be fed to a model.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [(i, r) for i, r in enumerate(csv.reader(fh), start=1) if r and any(c.strip() for c in r)]
    header = None
    if has_header and rows:
        header = [c.strip() for c in rows[0][1]]
        rows = rows[1:]
    if not rows:
        raise ParseError("no data rows")
    width = len(header) if header is not None else len(rows[0][1])
    if isinstance(drop_column, str):
        if header is not None and drop_column in header:
            drop_column = header.index(drop_column)
        elif drop_column.lstrip("-").isdigit():
            drop_column = int(drop_column)
        else:
            raise DataError(f"no column named {drop_column!r}")
    if drop_column is not None:
        if not -width <= drop_column < width:
            raise DataError(f"column {drop_column} out of range for {width} columns")
        drop_column %= width
    keep = [c for c in range(width) if c != drop_column]
    out = np.empty((len(rows), len(keep)))
    for r, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", lineno)
        for k, c in enumerate(keep):
            try:
                out[r, k] = float(row[c])
            except ValueError:
                raise ParseError(f"non-numeric value {row[c].strip()!r} in column {c}", lineno) from None
    if not np.all(np.isfinite(out)):
        raise DataError("features must be finite")
    return out


def make_xor(n_per_quadrant: int, spread: float = 0.3, seed: int = 0, center: float = 1.0) -> Dataset:
    """Four Gaussian clusters on the diagonals; same-sign quadrants are +1.

    Points are grouped by cluster in the order (+c,+c), (-c,-c), (+c,-c),
    (-c,+c).  Any coordinate that lands exactly on an axis is re-drawn.
    """
    if n_per_quadrant < 1:
        raise DataError("n_per_quadrant must be >= 1")
    if spread < 0:
        raise DataError("spread must be non-negative")
    rng = np.random.default_rng(seed)
    centers = center * np.array([[1, 1], [-1, -1], [1, -1], [-1, 1]], dtype=np.float64)
    X = np.repeat(centers, n_per_quadrant, axis=0)
    noise = rng.normal(scale=spread, size=X.shape) if spread > 0 else np.zeros_like(X)
    X = X + noise
    while spread > 0 and np.any(X == 0):
        bad = X == 0
        X[bad] = np.repeat(centers, n_per_quadrant, axis=0)[bad] + rng.normal(scale=spread, size=int(bad.sum()))
    y = np.repeat([1, 1, -1, -1], n_per_quadrant)
    return Dataset(X, y, ("x1", "x2"), "xor")


def split(dataset: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Uniformly random, unstratified, disjoint train/test subsets."""
    spec.check(dataset.n_samples)
    perm = np.random.default_rng(spec.seed).permutation(dataset.n_samples)
    train = perm[: spec.n_train]
    test = perm[spec.n_train: spec.n_train + spec.n_test]
    return dataset.subset(train), dataset.subset(test)


def uniform_weights(n: int) -> np.ndarray:
    if n < 1:
        raise DataError("n must be >= 1")
    return np.full(n, 1.0 / n)


def normalize_weights(w, n: int | None = None) -> np.ndarray:
    w = np.array(w, dtype=np.float64)
    if w.ndim != 1 or (n is not None and w.shape[0] != n):
        raise DataError(f"weights must be a vector of length {n}")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise DataError("weights must be finite and non-negative")
    total = math.fsum(w)
    if total <= 0:
        raise DataError("weights must have positive mass")
    return w / total


def derive_seed(seed: int, stream: int) -> int:
    """Deterministic 64-bit sub-seed for an independent random stream."""
    ss = np.random.SeedSequence(seed, spawn_key=(stream,))
    return int(ss.generate_state(1, np.uint64)[0])
