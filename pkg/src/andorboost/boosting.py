"""Discrete AdaBoost over pluggable weak learners.

The same loop yields Ada-Stump, Ada-Or, Ada-And, Ada-AndOr and Ada-Tree;
only the weak learner changes.  The vote weight of a round with weighted
error ``eps`` is ``0.5 * log((1 - eps) / eps)``, the minimizer of the
exponential loss, with ``eps`` clamped to ``[1e-6, 1 - 1e-6]``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np

from .chains import DEFAULT_MAX_OPS, DEFAULT_TOL, LogicChain, train_and_chain, train_or_chain
from ._io import atomic_write_text
from .dataset import Dataset, normalize_weights, uniform_weights
from .stump import DecisionStump, exact_error, train_stump
from .tree import DEFAULT_MAX_DEPTH, DEFAULT_MAX_LEAVES, DecisionTree, train_tree

__all__ = [
    "STUMP", "OR_CHAIN", "AND_CHAIN", "AND_OR", "TREE", "KINDS",
    "WeakClassifier", "WeakLearnerSpec", "BoostedEnsemble", "RoundInfo",
    "EmptyModelError", "ModelFormatError",
    "compute_alpha", "reweight", "fit_weak", "train_boost",
    "predict_ensemble", "margin", "posterior", "exponential_loss",
    "save_model", "load_model", "dumps_model", "loads_model",
]

STUMP = "stump"
OR_CHAIN = "or"
AND_CHAIN = "and"
AND_OR = "andor"
TREE = "tree"
KINDS = (STUMP, OR_CHAIN, AND_CHAIN, AND_OR, TREE)

EPS_CLAMP = 1e-6
STOP_EPS = 0.5 - 1e-12

MODEL_FORMAT = "andorboost-model"
MODEL_VERSION = 1


class EmptyModelError(RuntimeError):
    """Prediction requested from an ensemble with no weak classifiers."""


class ModelFormatError(ValueError):
    pass


class WeakClassifier(Protocol):
    def predict(self, X): ...
    def to_dict(self) -> dict: ...


@dataclass(frozen=True)
class WeakLearnerSpec:
    kind: str = STUMP
    max_ops: int = DEFAULT_MAX_OPS
    tol: float = DEFAULT_TOL
    max_depth: int = DEFAULT_MAX_DEPTH
    max_leaves: int = DEFAULT_MAX_LEAVES

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown learner kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.max_ops < 1:
            raise ValueError("max_ops must be >= 1")
        if self.max_depth < 1 or self.max_leaves < 2:
            raise ValueError("tree needs max_depth >= 1 and max_leaves >= 2")
        if not self.tol >= 0:
            raise ValueError("tol must be non-negative")

    @property
    def label(self) -> str:
        """Short human-readable name such as ``Ada-AndOr(5)``."""
        if self.kind == STUMP:
            return "Ada-Stump"
        if self.kind == TREE:
            return f"Ada-Tree(d{self.max_depth},l{self.max_leaves})"
        name = {OR_CHAIN: "Or", AND_CHAIN: "And", AND_OR: "AndOr"}[self.kind]
        return f"Ada-{name}({self.max_ops})"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "max_ops": self.max_ops, "tol": self.tol,
                "max_depth": self.max_depth, "max_leaves": self.max_leaves}

    @classmethod
    def from_dict(cls, d: dict) -> "WeakLearnerSpec":
        return cls(d["kind"], int(d["max_ops"]), float(d["tol"]), int(d["max_depth"]), int(d["max_leaves"]))


@dataclass(frozen=True)
class RoundInfo:
    error: float
    alpha: float
    connective: str | None = None


@dataclass(frozen=True, eq=False)
class BoostedEnsemble:
    weak_classifiers: tuple
    alphas: tuple[float, ...]
    learner_spec: WeakLearnerSpec = field(default_factory=WeakLearnerSpec)
    rounds: tuple[RoundInfo, ...] = ()

    def __post_init__(self):
        wc = tuple(self.weak_classifiers)
        alphas = tuple(float(a) for a in self.alphas)
        if len(wc) != len(alphas):
            raise ValueError("weak_classifiers and alphas differ in length")
        if any(not a > 0 for a in alphas):
            raise ValueError("every alpha must be positive")
        object.__setattr__(self, "weak_classifiers", wc)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "rounds", tuple(self.rounds))

    def __len__(self) -> int:
        return len(self.weak_classifiers)

    def _check(self):
        if not self.weak_classifiers:
            raise EmptyModelError("ensemble has no weak classifiers")

    def staged_decision_function(self, X):
        """Cumulative weighted vote after each round, shape (T, n)."""
        self._check()
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        out = np.empty((len(self), X.shape[0]))
        f = np.zeros(X.shape[0])
        for t, (h, a) in enumerate(zip(self.weak_classifiers, self.alphas)):
            f = f + a * h.predict(X)
            out[t] = f
        return out

    def decision_function(self, X):
        X = np.asarray(X, dtype=np.float64)
        f = self.staged_decision_function(X)[-1]
        return float(f[0]) if X.ndim == 1 else f

    def predict(self, X):
        f = self.decision_function(X)
        # sign(0) -> -1
        return (1 if f > 0 else -1) if np.ndim(f) == 0 else np.where(f > 0, 1, -1).astype(np.int8)

    def staged_predict(self, X):
        return np.where(self.staged_decision_function(X) > 0, 1, -1).astype(np.int8)

    def margin(self, X, y):
        f = self.decision_function(X)
        m = np.clip(np.asarray(y) * f / math.fsum(self.alphas), -1.0, 1.0)
        return float(m) if np.ndim(m) == 0 else m

    def posterior(self, X):
        """Probability of +1: ``exp(2f) / (1 + exp(2f))`` for vote ``f``."""
        f = self.decision_function(X)
        return 0.5 * (1.0 + np.tanh(f))


def compute_alpha(eps: float) -> float:
    eps = min(max(float(eps), EPS_CLAMP), 1.0 - EPS_CLAMP)
    return 0.5 * math.log((1.0 - eps) / eps)


def reweight(w, alpha: float, predictions, labels) -> np.ndarray:
    """``w * exp(-alpha * y * h)``, renormalized to sum to one."""
    w = np.asarray(w, dtype=np.float64)
    yh = np.asarray(labels, dtype=np.float64) * np.asarray(predictions, dtype=np.float64)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    new = w * np.exp(-alpha * yh)
    total = math.fsum(new)
    if not total > 0 or not math.isfinite(total):
        raise RuntimeError("reweighting lost all probability mass")
    return new / total


def fit_weak(data: Dataset, w, spec: WeakLearnerSpec):
    """Fit one weak classifier; returns ``(classifier, weighted error)``."""
    if spec.kind == STUMP:
        return train_stump(data, w)
    if spec.kind == OR_CHAIN:
        c = train_or_chain(data, w, spec.max_ops, spec.tol)
        return c, c.training_error
    if spec.kind == AND_CHAIN:
        c = train_and_chain(data, w, spec.max_ops, spec.tol)
        return c, c.training_error
    if spec.kind == AND_OR:
        c_or = train_or_chain(data, w, spec.max_ops, spec.tol)
        c_and = train_and_chain(data, w, spec.max_ops, spec.tol)
        c = c_or if c_or.training_error <= c_and.training_error else c_and
        return c, c.training_error
    t = train_tree(data, w, spec.max_depth, spec.max_leaves)
    return t, exact_error(t.predict(data.features), data.labels, w)


def train_boost(
    data: Dataset,
    spec: WeakLearnerSpec | None = None,
    rounds: int = 100,
    w0=None,
    callback: Callable | None = None,
) -> BoostedEnsemble:
    """Discrete AdaBoost.

    Parameters
    ----------
    data : Dataset
    spec : WeakLearnerSpec
        Weak learner; defaults to stumps.
    rounds : int
        Maximum number of rounds.  Training stops early, without appending,
        at the first round whose best weak classifier has error
        ``>= 0.5 - 1e-12``.
    w0 : array-like, optional
        Initial distribution; uniform when omitted.
    callback : callable, optional
        Called as ``callback(t, weights, classifier, error, alpha)`` for
        every accepted round, ``weights`` being the distribution the
        classifier was fitted on.
    """
    spec = spec or WeakLearnerSpec()
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    n = data.n_samples
    w = uniform_weights(n) if w0 is None else normalize_weights(w0, n)
    hs, alphas, info = [], [], []
    for t in range(rounds):
        h, eps = fit_weak(data, w, spec)
        if eps >= STOP_EPS:
            break
        alpha = compute_alpha(eps)
        if callback is not None:
            callback(t, w, h, eps, alpha)
        hs.append(h)
        alphas.append(alpha)
        info.append(RoundInfo(eps, alpha, h.connective if isinstance(h, LogicChain) else None))
        w = reweight(w, alpha, h.predict(data.features), data.labels)
    return BoostedEnsemble(tuple(hs), tuple(alphas), spec, tuple(info))


def predict_ensemble(model: BoostedEnsemble, x):
    return model.predict(x)


def margin(model: BoostedEnsemble, x, y):
    return model.margin(x, y)


def posterior(model: BoostedEnsemble, x):
    return model.posterior(x)


def exponential_loss(model: BoostedEnsemble, data: Dataset, w0=None, scale: float = 1.0):
    """Loss ``sum_i w0(i) exp(-scale * y_i * f_k(x_i))`` after each round k.

    Entry 0 is the loss of the empty ensemble.
    """
    w0 = uniform_weights(data.n_samples) if w0 is None else np.asarray(w0, dtype=np.float64)
    staged = model.staged_decision_function(data.features)
    y = data.labels.astype(np.float64)
    losses = [math.fsum(w0)]
    losses += [math.fsum(w0 * np.exp(-scale * y * f)) for f in staged]
    return np.array(losses)


# ---------------------------------------------------------------------------
# model files

def _weak_from_dict(d: dict):
    kind = d.get("type")
    if kind == "stump":
        return DecisionStump.from_dict(d)
    if kind == "chain":
        return LogicChain.from_dict(d)
    if kind == "tree":
        return DecisionTree.from_dict(d)
    raise ModelFormatError(f"unknown weak classifier type {kind!r}")


def dumps_model(model: BoostedEnsemble) -> str:
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "learner": model.learner_spec.to_dict(),
        "rounds": [
            {"alpha": a, "error": r.error if r else None, "weak": h.to_dict()}
            for h, a, r in zip(model.weak_classifiers, model.alphas,
                               model.rounds or (None,) * len(model))
        ],
    }
    # json writes floats with repr(), which round-trips exactly
    return json.dumps(doc, indent=1) + "\n"


def loads_model(text: str) -> BoostedEnsemble:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not a model file: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelFormatError("not a model file")
    if doc.get("version") != MODEL_VERSION:
        raise ModelFormatError(f"unsupported model version {doc.get('version')!r}")
    spec = WeakLearnerSpec.from_dict(doc["learner"])
    hs, alphas, info = [], [], []
    for r in doc["rounds"]:
        h = _weak_from_dict(r["weak"])
        hs.append(h)
        alphas.append(float(r["alpha"]))
        if r.get("error") is not None:
            info.append(RoundInfo(float(r["error"]), float(r["alpha"]),
                                  h.connective if isinstance(h, LogicChain) else None))
    return BoostedEnsemble(tuple(hs), tuple(alphas), spec, tuple(info) if len(info) == len(hs) else ())


def save_model(model: BoostedEnsemble, path) -> None:
    atomic_write_text(path, dumps_model(model))


def load_model(path) -> BoostedEnsemble:
    with open(path) as fh:
        return loads_model(fh.read())
