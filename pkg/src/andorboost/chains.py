"""OR / AND combinations of stumps, grown greedily under a fixed distribution.

An OR chain answers +1 as soon as any of its operations does; an AND chain
answers +1 only when all of them do.  Growing a chain never reweights the
samples.  Instead, once an OR chain says +1 for a sample nothing added
later can change that answer, so the sample is frozen: its error is already
settled, and the next operation is fitted only on the samples still at -1.
AND chains freeze the samples already at -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .stump import DecisionStump, exact_error, train_stump

__all__ = ["OR", "AND", "LogicChain", "evaluate_chain", "chain_error",
           "train_or_chain", "train_and_chain", "DEFAULT_MAX_OPS", "DEFAULT_TOL"]

OR = "OR"
AND = "AND"
DEFAULT_MAX_OPS = 5
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class LogicChain:
    connective: str
    operations: tuple[DecisionStump, ...]
    training_error: float = float("nan")

    def __post_init__(self):
        if self.connective not in (OR, AND):
            raise ValueError(f"connective must be {OR!r} or {AND!r}")
        ops = tuple(self.operations)
        if not ops:
            raise ValueError("a chain needs at least one operation")
        object.__setattr__(self, "operations", ops)

    def __len__(self) -> int:
        return len(self.operations)

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        X2 = X.reshape(1, -1) if single else X
        votes = np.stack([op.predict(X2) for op in self.operations])
        if self.connective == OR:
            pos = np.any(votes > 0, axis=0)
        else:
            pos = np.all(votes > 0, axis=0)
        out = np.where(pos, 1, -1).astype(np.int8)
        return int(out[0]) if single else out

    def to_dict(self) -> dict:
        return {"type": "chain", "connective": self.connective,
                "training_error": self.training_error,
                "operations": [op.to_dict() for op in self.operations]}

    @classmethod
    def from_dict(cls, d: dict) -> "LogicChain":
        return cls(d["connective"], tuple(DecisionStump.from_dict(o) for o in d["operations"]),
                   float(d.get("training_error", "nan")))


def evaluate_chain(chain: LogicChain, x):
    return chain.predict(x)


def chain_error(chain: LogicChain, data: Dataset, w) -> float:
    return exact_error(chain.predict(data.features), data.labels, w)


def _grow(connective: str, data: Dataset, w, max_ops: int, tol: float) -> LogicChain:
    if max_ops < 1:
        raise ValueError("max_ops must be >= 1")
    w = np.asarray(w, dtype=np.float64)
    y = data.labels
    # OR settles samples already at +1, AND those already at -1
    settled = 1 if connective == OR else -1

    stump, _ = train_stump(data, w)
    ops = [stump]
    out = stump.predict(data.features)
    error = exact_error(out, y, w)
    while len(ops) < max_ops and error > 0:
        open_ = out != settled
        if not np.any(open_ & (w > 0)):
            break
        stump, _ = train_stump(data, np.where(open_, w, 0.0))
        h = stump.predict(data.features)
        new_out = np.where(open_, h, out)
        new_error = exact_error(new_out, y, w)
        if not error - new_error > tol:
            break
        ops.append(stump)
        out, error = new_out, new_error
    return LogicChain(connective, tuple(ops), error)


def train_or_chain(data: Dataset, w, max_ops: int = DEFAULT_MAX_OPS, tol: float = DEFAULT_TOL) -> LogicChain:
    """Greedy OrBoost.

    The first operation is the best weighted stump.  Each further operation
    is the stump minimizing the error of the whole OR, which amounts to the
    best stump on the samples the chain still labels -1.  Growth stops at
    ``max_ops`` or as soon as the best extension fails to lower the error
    by more than ``tol``.
    """
    return _grow(OR, data, w, max_ops, tol)


def train_and_chain(data: Dataset, w, max_ops: int = DEFAULT_MAX_OPS, tol: float = DEFAULT_TOL) -> LogicChain:
    """Greedy AndBoost; the mirror image of :func:`train_or_chain`."""
    return _grow(AND, data, w, max_ops, tol)
