"""Thresholded single-feature weak classifier.

A stump predicts +1 when ``x[feature] >= threshold`` (direction ``GE``) or
when ``x[feature] < threshold`` (direction ``LT``), and -1 otherwise.
Values equal to the threshold fall on the ``>=`` side.

Errors are reported as correctly rounded sums (:func:`math.fsum`) of the
misclassified weights, so two stumps that misclassify the same weighted
samples always report bit-identical errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset

__all__ = ["GE", "LT", "DecisionStump", "weighted_error", "exact_error", "train_stump"]

GE = "GE"
LT = "LT"
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class DecisionStump:
    feature_index: int
    threshold: float
    direction: str = GE

    def __post_init__(self):
        if self.direction not in (GE, LT):
            raise ValueError(f"direction must be {GE!r} or {LT!r}, got {self.direction!r}")
        if self.feature_index < 0:
            raise ValueError("feature_index must be non-negative")
        object.__setattr__(self, "feature_index", int(self.feature_index))
        object.__setattr__(self, "threshold", float(self.threshold))

    def predict(self, X):
        """Labels in {-1, +1}; a 1-D input is treated as a single sample."""
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        X2 = X.reshape(1, -1) if single else X
        if self.feature_index >= X2.shape[1]:
            raise ValueError(
                f"stump uses feature {self.feature_index} but input has {X2.shape[1]} features"
            )
        ge = X2[:, self.feature_index] >= self.threshold
        pos = ge if self.direction == GE else ~ge
        out = np.where(pos, 1, -1).astype(np.int8)
        return int(out[0]) if single else out

    def negated(self) -> "DecisionStump":
        return DecisionStump(self.feature_index, self.threshold, LT if self.direction == GE else GE)

    def to_dict(self) -> dict:
        return {"type": "stump", "feature": self.feature_index,
                "threshold": self.threshold, "direction": self.direction}

    @classmethod
    def from_dict(cls, d: dict) -> "DecisionStump":
        return cls(int(d["feature"]), float(d["threshold"]), d["direction"])


def exact_error(predictions, labels, w) -> float:
    """Correctly rounded weighted 0/1 error of a prediction vector."""
    wrong = np.asarray(predictions) != np.asarray(labels)
    return math.fsum(np.asarray(w, dtype=np.float64)[wrong])


def weighted_error(stump: DecisionStump, data: Dataset, w) -> float:
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (data.n_samples,):
        raise ValueError("weights and data disagree in length")
    return exact_error(stump.predict(data.features), data.labels, w)


def train_stump(data: Dataset, w) -> tuple[DecisionStump, float]:
    """Minimum weighted-error stump over the full candidate grid.

    Thresholds per feature are the midpoints between consecutive distinct
    values plus one sentinel below the minimum and one above the maximum
    (the sentinels give the two constant classifiers).  Both directions
    are scored.

    Exact ties are resolved in this order: stumps that split the data
    before constant ones, then lower feature index, then lower threshold,
    then ``GE`` before ``LT``.

    Weights need not sum to one; zero weights are allowed.

    Returns
    -------
    stump : DecisionStump
    error : float
        ``weighted_error(stump, data, w)``, bit for bit.
    """
    w = np.asarray(w, dtype=np.float64)
    n, d = data.features.shape
    if w.shape != (n,):
        raise ValueError("weights and data disagree in length")
    y = data.labels
    sv = data.sorted_view

    wp = np.where(y > 0, w, 0.0)
    wn = np.where(y > 0, 0.0, w)
    zero = np.zeros((1, d))
    cp = np.vstack([zero, np.cumsum(wp[sv.order], axis=0)])
    cn = np.vstack([zero, np.cumsum(wn[sv.order], axis=0)])
    # row k: the k smallest values form the low side
    err = np.stack([cp + (cn[-1] - cn),    # GE: low side -1, high side +1
                    cn + (cp[-1] - cp)])   # LT: low side +1, high side -1
    err[:, ~sv.valid] = np.inf

    total = float(w.sum())
    slack = 8.0 * (n + 2) * _EPS * total + 1e-300
    m = err.min()
    dirs, ks, js = np.nonzero(err <= m + slack)

    # Rank order for tie-breaking.
    constant = (ks == 0) | (ks == n)
    rank = np.lexsort((dirs, ks, js, constant))
    dirs, ks, js, constant = dirs[rank], ks[rank], js[rank], constant[rank]

    # Candidates that misclassify the same positive-weight samples share an
    # exact error; score one representative per group.
    nz = np.vstack([zero, np.cumsum((w > 0)[sv.order], axis=0)]).astype(np.int64)
    n_nz = int(np.count_nonzero(w > 0))
    below = nz[ks, js]
    always_pos = ((dirs == 0) & (below == 0)) | ((dirs == 1) & (below == n_nz))
    always_neg = ((dirs == 0) & (below == n_nz)) | ((dirs == 1) & (below == 0))
    group = (js * 2 + dirs) * (n + 2) + below
    group = np.where(always_pos, -1, np.where(always_neg, -2, group))
    _, first = np.unique(group, return_index=True)
    first.sort()

    best = None
    for i in first:
        if always_pos[i]:
            e = math.fsum(wn)
        elif always_neg[i]:
            e = math.fsum(wp)
        else:
            j = js[i]
            above = np.empty(n, dtype=bool)
            above[sv.order[ks[i]:, j]] = True
            above[sv.order[: ks[i], j]] = False
            pred_pos = above if dirs[i] == 0 else ~above
            e = math.fsum(w[pred_pos != (y > 0)])
        if best is None or e < best[0]:
            best = (e, i)

    e, i = best
    stump = DecisionStump(int(js[i]), float(sv.thresholds[ks[i], js[i]]), GE if dirs[i] == 0 else LT)
    return stump, e
