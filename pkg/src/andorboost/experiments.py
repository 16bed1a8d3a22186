"""Experiment protocol: repeated random splits, sweeps, ratio tables, xor demos.

Every number produced here is a pure function of the input data, the
learner spec and the seeds.  Wall-clock time is measured but kept out of
written reports unless explicitly requested, so re-running a command
reproduces its files byte for byte.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._io import atomic_write_text, fmt
from .boosting import (
    STUMP, BoostedEnsemble, WeakLearnerSpec, compute_alpha, reweight, train_boost,
)
from .dataset import Dataset, SplitSpec, derive_seed, make_xor, split, uniform_weights

__all__ = [
    "TrialReport", "SweepRow", "RatioRow", "XorDemoResult", "DeadlockReport",
    "evaluate", "run_trials", "summarize", "ops_sweep", "ratio_table", "format_ratio",
    "xor_demo", "origin_line_predictions", "origin_line_deadlock_check",
    "TRIAL_CSV_COLUMNS", "trials_to_csv", "trials_to_jsonl", "curves_to_csv",
    "sweep_to_csv", "ratios_to_csv", "grid_to_csv", "write_text",
]

MARGIN_QUANTILES = (0.0, 0.05, 0.25, 0.5)


@dataclass
class TrialReport:
    dataset_name: str
    spec: WeakLearnerSpec
    rounds: int
    seed: int
    trial: int
    n_train: int
    n_test: int
    train_error: float
    test_error: float
    per_round_train_curve: list[float]
    per_round_test_curve: list[float]
    margin_quantiles: tuple[float, ...] | None
    per_round_connective: list[str] | None = None
    wall_time: float = field(default=0.0, compare=False)
    test_predictions: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def accepted_rounds(self) -> int:
        return len(self.per_round_train_curve)

    def to_record(self, timing: bool = False) -> dict:
        rec = {
            "dataset": self.dataset_name,
            "learner": self.spec.kind,
            "max_ops": self.spec.max_ops,
            "max_depth": self.spec.max_depth,
            "max_leaves": self.spec.max_leaves,
            "rounds": self.rounds,
            "trial": self.trial,
            "seed": self.seed,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "accepted_rounds": self.accepted_rounds,
            "train_error": _round6(self.train_error),
            "test_error": _round6(self.test_error),
            "margin_quantiles": None if self.margin_quantiles is None
            else [_round6(q) for q in self.margin_quantiles],
            "train_curve": [_round6(e) for e in self.per_round_train_curve],
            "test_curve": [_round6(e) for e in self.per_round_test_curve],
        }
        if self.per_round_connective is not None:
            rec["connectives"] = list(self.per_round_connective)
        if timing:
            rec["wall_time"] = _round6(self.wall_time)
        return rec


def _round6(x: float) -> float:
    return float(f"{x:.6g}")


def evaluate(model: BoostedEnsemble, data: Dataset) -> float:
    """Error rate; an empty ensemble votes 0 everywhere, hence -1."""
    if len(model) == 0:
        return float(np.mean(data.labels != -1))
    return float(np.mean(model.predict(data.features) != data.labels))


def _trial(args) -> TrialReport:
    dataset, spec, rounds, split_spec, trial = args
    train, test = split(dataset, split_spec)
    t0 = time.perf_counter()
    model = train_boost(train, spec, rounds)
    wall = time.perf_counter() - t0
    if len(model):
        tr_curve = (model.staged_predict(train.features) != train.labels).mean(axis=1).tolist()
        te_curve = (model.staged_predict(test.features) != test.labels).mean(axis=1).tolist()
        m = model.margin(train.features, train.labels)
        quant = tuple(float(q) for q in np.quantile(m, MARGIN_QUANTILES))
        test_pred = model.predict(test.features)
    else:
        tr_curve, te_curve, quant = [], [], None
        test_pred = np.full(test.n_samples, -1, dtype=np.int8)
    conn = None
    if spec.kind == "andor":
        conn = [r.connective for r in model.rounds]
    return TrialReport(
        dataset_name=dataset.name, spec=spec, rounds=rounds, seed=split_spec.seed, trial=trial,
        n_train=train.n_samples, n_test=test.n_samples,
        train_error=evaluate(model, train), test_error=evaluate(model, test),
        per_round_train_curve=tr_curve, per_round_test_curve=te_curve,
        margin_quantiles=quant, per_round_connective=conn, wall_time=wall,
        test_predictions=test_pred,
    )


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def run_trials(
    dataset: Dataset,
    spec: WeakLearnerSpec,
    rounds: int,
    split_spec: SplitSpec,
    n_trials: int = 10,
    base_seed: int | None = None,
    jobs: int = 1,
) -> list[TrialReport]:
    """Train and test on ``n_trials`` random splits.

    Trial ``k`` draws its split with seed ``base_seed + k``; ``base_seed``
    defaults to ``split_spec.seed``.  Reports come back in trial order for
    any ``jobs``.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    split_spec.check(dataset.n_samples)
    base = split_spec.seed if base_seed is None else base_seed
    args = [(dataset, spec, rounds, split_spec.with_seed(base + k), k) for k in range(n_trials)]
    reports = _map(_trial, args, jobs)
    return sorted(reports, key=lambda r: r.trial)


def summarize(reports) -> dict:
    """Mean and (population) standard deviation of train/test error."""
    tr = np.array([r.train_error for r in sorted(reports, key=lambda r: r.trial)])
    te = np.array([r.test_error for r in sorted(reports, key=lambda r: r.trial)])
    return {"mean_train": float(tr.mean()), "std_train": float(tr.std()),
            "mean_test": float(te.mean()), "std_test": float(te.std()), "n_trials": len(tr)}


@dataclass(frozen=True)
class SweepRow:
    kind: str
    ops: int
    rounds: int
    mean_train: float
    std_train: float
    mean_test: float
    std_test: float


def ops_sweep(dataset, kinds, rounds, ops_range, split_spec, n_trials=10, base_seed=None,
              jobs=1, **spec_kw) -> list[SweepRow]:
    """Mean errors for every (learner kind, number of operations) pair."""
    rows = []
    for kind in kinds:
        for ops in ops_range:
            spec = WeakLearnerSpec(kind, max_ops=ops, **spec_kw)
            s = summarize(run_trials(dataset, spec, rounds, split_spec, n_trials, base_seed, jobs))
            rows.append(SweepRow(kind, ops, rounds, s["mean_train"], s["std_train"],
                                 s["mean_test"], s["std_test"]))
    return rows


@dataclass(frozen=True)
class RatioRow:
    dataset_name: str
    numerator_spec: WeakLearnerSpec
    denominator_spec: WeakLearnerSpec
    numerator_rounds: int
    denominator_rounds: int
    numerator_mean: float
    denominator_mean: float
    ratio: float | None

    @property
    def available(self) -> bool:
        return self.ratio is not None


def format_ratio(ratio: float | None) -> str:
    """``0.608 -> '60.8%'``; unavailable ratios print as ``n/a``."""
    return "n/a" if ratio is None else f"{100.0 * ratio:.1f}%"


def ratio_table(dataset, specs, reference=None, rounds=100, reference_rounds=None,
                split_spec=None, n_trials=10, base_seed=None, jobs=1) -> list[RatioRow]:
    """Mean test error of each spec over that of the stump reference.

    All specs share the same trial seeds.  ``rounds`` is either one count
    for every spec or a sequence aligned with ``specs``.  A reference with
    zero mean test error yields rows with ``ratio=None``.
    """
    reference = reference or WeakLearnerSpec(STUMP)
    if split_spec is None:
        raise ValueError("split_spec is required")
    specs = list(specs)
    per_spec_rounds = list(rounds) if np.ndim(rounds) else [int(rounds)] * len(specs)
    if len(per_spec_rounds) != len(specs):
        raise ValueError("rounds must align with specs")
    ref_rounds = reference_rounds if reference_rounds is not None else (
        per_spec_rounds[0] if per_spec_rounds else 100)
    ref = summarize(run_trials(dataset, reference, ref_rounds, split_spec, n_trials, base_seed, jobs))
    rows = []
    for spec, r in zip(specs, per_spec_rounds):
        if spec == reference and r == ref_rounds:
            num = ref
        else:
            num = summarize(run_trials(dataset, spec, r, split_spec, n_trials, base_seed, jobs))
        den = ref["mean_test"]
        ratio = None if den == 0 else num["mean_test"] / den
        rows.append(RatioRow(dataset.name, spec, reference, r, ref_rounds,
                             num["mean_test"], den, ratio))
    return rows


@dataclass
class XorDemoResult:
    spec: WeakLearnerSpec
    rounds: int
    accepted_rounds: int
    train_error: float
    test_error: float
    grid: np.ndarray  # (G*G, 3): x, y, predicted label

    @property
    def positive_points(self) -> np.ndarray:
        return self.grid[self.grid[:, 2] > 0, :2]


def xor_demo(n_per_quadrant=250, spread=0.3, seed=0, specs=(WeakLearnerSpec(),),
             rounds=100, grid_resolution=101, extent=2.0) -> list[XorDemoResult]:
    """Train each spec on a seeded xor sample and classify a grid over ``[-2, 2]^2``.

    The held-out sample is drawn with an independent seed derived from
    ``seed``.
    """
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be >= 2")
    specs = list(specs)
    per_spec_rounds = list(rounds) if np.ndim(rounds) else [int(rounds)] * len(specs)
    train = make_xor(n_per_quadrant, spread, seed)
    test = make_xor(n_per_quadrant, spread, derive_seed(seed, 1))
    axis = np.linspace(-extent, extent, grid_resolution)
    gx, gy = np.meshgrid(axis, axis, indexing="xy")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    out = []
    for spec, r in zip(specs, per_spec_rounds):
        model = train_boost(train, spec, r)
        labels = model.predict(pts) if len(model) else np.full(len(pts), -1)
        out.append(XorDemoResult(spec, r, len(model), evaluate(model, train), evaluate(model, test),
                                 np.column_stack([pts, labels])))
    return out


def origin_line_predictions(X, angles) -> np.ndarray:
    """Half-plane classifiers through the origin, shape (n, len(angles)).

    A point is +1 when its projection on ``(cos a, sin a)`` is positive.
    Points exactly on the line are split by the perpendicular direction,
    which keeps every classifier odd: ``h(-x) = -h(x)`` for ``x != 0``.
    """
    X = np.asarray(X, dtype=np.float64)
    angles = np.asarray(angles, dtype=np.float64)
    p = X @ np.stack([np.cos(angles), np.sin(angles)])
    q = X @ np.stack([-np.sin(angles), np.cos(angles)])
    return np.where((p > 0) | ((p == 0) & (q > 0)), 1, -1).astype(np.int8)


def _line_errors(H, y, w):
    return np.array([math.fsum(w[H[:, k] != y]) for k in range(H.shape[1])])


@dataclass
class DeadlockReport:
    angles: np.ndarray
    errors: np.ndarray
    max_deviation: float
    first_index: int
    first_error: float
    alpha: float
    errors_after: np.ndarray
    next_index: int

    @property
    def first_angle(self) -> float:
        return float(self.angles[self.first_index])

    @property
    def next_angle(self) -> float:
        return float(self.angles[self.next_index])

    def to_record(self) -> dict:
        return {
            "n_angles": len(self.angles),
            "max_deviation": self.max_deviation,
            "first_angle": _round6(self.first_angle),
            "first_error": _round6(self.first_error),
            "alpha": _round6(self.alpha),
            "next_angle": _round6(self.next_angle),
            "next_error": _round6(float(self.errors_after[self.next_index])),
            "errors": [_round6(e) for e in self.errors],
            "errors_after": [_round6(e) for e in self.errors_after],
        }


def origin_line_deadlock_check(n_per_quadrant=10, seed=0, n_angles=36, spread=0.0,
                               data: Dataset | None = None, first_index: int | None = None,
                               alpha_rule: str = "adaboost") -> DeadlockReport:
    """Weighted errors of origin lines on xor, before and after one reweighting.

    ``n_angles`` directions are evenly spaced on the circle.  Under uniform
    weights every line has error 0.5 on a point set closed under negation;
    ``max_deviation`` is the largest departure from 0.5.  The line at
    ``first_index`` (default: the lowest-error line, first on ties) is then
    used for one boosting reweight, and ``next_index`` is the best line
    under the new weights.

    ``alpha_rule="adaboost"`` uses :func:`compute_alpha`; ``"log-odds"``
    uses the unhalved ``log((1 - eps) / eps)``.
    """
    if n_angles < 4:
        raise ValueError("n_angles must be >= 4")
    if alpha_rule not in ("adaboost", "log-odds"):
        raise ValueError("alpha_rule must be 'adaboost' or 'log-odds'")
    if data is None:
        data = make_xor(n_per_quadrant, spread, seed)
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    H = origin_line_predictions(data.features, angles)
    y = data.labels
    w = uniform_weights(data.n_samples)
    errors = _line_errors(H, y, w)
    k1 = int(np.argmin(errors)) if first_index is None else int(first_index)
    alpha = compute_alpha(errors[k1])
    if alpha_rule == "log-odds":
        alpha *= 2.0
    w2 = reweight(w, alpha, H[:, k1], y)
    after = _line_errors(H, y, w2)
    return DeadlockReport(angles, errors, float(np.max(np.abs(errors - 0.5))), k1,
                          float(errors[k1]), alpha, after, int(np.argmin(after)))


# ---------------------------------------------------------------------------
# report formats

TRIAL_CSV_COLUMNS = (
    "dataset", "learner", "max_ops", "max_depth", "max_leaves", "rounds", "trial", "seed",
    "n_train", "n_test", "accepted_rounds", "train_error", "test_error",
    "margin_min", "margin_q05", "margin_q25", "margin_q50",
)


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def trials_to_csv(reports, timing: bool = False) -> str:
    header = TRIAL_CSV_COLUMNS + (("wall_time",) if timing else ())
    rows = []
    for r in reports:
        q = r.margin_quantiles or (None,) * 4
        row = [r.dataset_name, r.spec.kind, r.spec.max_ops, r.spec.max_depth, r.spec.max_leaves,
               r.rounds, r.trial, r.seed, r.n_train, r.n_test, r.accepted_rounds,
               r.train_error, r.test_error, *q]
        if timing:
            row.append(r.wall_time)
        rows.append(row)
    return _csv(header, rows)


def trials_to_jsonl(reports, timing: bool = False) -> str:
    return "".join(json.dumps(r.to_record(timing), sort_keys=True) + "\n" for r in reports)


def curves_to_csv(reports) -> str:
    """Long-format error curves: one row per (learner, trial, round)."""
    rows = []
    for r in reports:
        for t, (a, b) in enumerate(zip(r.per_round_train_curve, r.per_round_test_curve), start=1):
            rows.append([r.spec.kind, r.spec.max_ops, r.trial, t, a, b])
    return _csv(("learner", "max_ops", "trial", "round", "train_error", "test_error"), rows)


def sweep_to_csv(rows) -> str:
    return _csv(("learner", "ops", "rounds", "mean_train", "std_train", "mean_test", "std_test"),
                [[r.kind, r.ops, r.rounds, r.mean_train, r.std_train, r.mean_test, r.std_test]
                 for r in rows])


def ratios_to_csv(rows) -> str:
    return _csv(("dataset", "numerator", "denominator", "numerator_rounds", "denominator_rounds",
                 "numerator_mean_test", "denominator_mean_test", "ratio", "ratio_pct"),
                [[r.dataset_name, r.numerator_spec.label, r.denominator_spec.label,
                  r.numerator_rounds, r.denominator_rounds, r.numerator_mean, r.denominator_mean,
                  r.ratio, format_ratio(r.ratio)] for r in rows])


def grid_to_csv(result: XorDemoResult) -> str:
    return _csv(("x", "y", "predicted_label"),
                [[float(x), float(y), int(lab)] for x, y, lab in result.grid])


def write_text(path, text: str) -> None:
    atomic_write_text(path, text)
