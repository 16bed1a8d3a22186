"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the search code under test: candidates are enumerated
from scratch and errors are summed with ``math.fsum`` in plain Python.
"""

import itertools
import math

import numpy as np


def stump_predict(X, j, thr, direction):
    col = np.asarray(X, dtype=float)[:, j]
    pos = col >= thr if direction == "GE" else col < thr
    return np.where(pos, 1, -1)


def error_of(pred, y, w):
    return math.fsum(float(w[i]) for i in range(len(y)) if pred[i] != y[i])


def all_stumps(X):
    """Every (constant?, feature, threshold, direction) on the candidate grid."""
    X = np.asarray(X, dtype=float)
    out = []
    for j in range(X.shape[1]):
        u = sorted(set(X[:, j].tolist()))
        cuts = [(False, (a + b) / 2.0) for a, b in zip(u, u[1:])]
        cuts = [(True, u[0] - 1.0)] + cuts + [(True, u[-1] + 1.0)]
        for const, thr in cuts:
            for direction in ("GE", "LT"):
                out.append((const, j, thr, direction))
    return out


def brute_force_stump(X, y, w):
    """Minimum-error stump, ties: split before constant, feature, threshold, GE first."""
    best = None
    for const, j, thr, direction in all_stumps(X):
        pred = stump_predict(X, j, thr, direction)
        e = error_of(pred, y, w)
        key = (e, const, j, thr, direction != "GE")
        if best is None or key < best[0]:
            best = (key, (j, thr, direction), pred)
    (e, *_), stump, pred = best
    return stump, e, pred


def brute_force_extension(X, y, w, current, connective):
    """Best combined error of appending one more stump to a chain output."""
    best = math.inf
    for _, j, thr, direction in all_stumps(X):
        h = stump_predict(X, j, thr, direction)
        out = np.maximum(current, h) if connective == "OR" else np.minimum(current, h)
        best = min(best, error_of(out, y, w))
    return best


def exhaustive_min_error(X, y, w):
    """Minimum over all 2^n labelings realizable by some grid stump."""
    return min(error_of(stump_predict(X, j, t, d), y, w) for _, j, t, d in all_stumps(X))


def cartesian(*axes):
    return np.array(list(itertools.product(*axes)), dtype=float)
