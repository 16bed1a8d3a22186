"""Command-line front end.

Exit status: 0 on success, 1 on runtime failure, 2 on invalid usage.
Every file is written atomically; report files never contain timings
unless ``--timing`` is given, so identical flags give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import experiments as ex
from .boosting import KINDS, STUMP, ModelFormatError, WeakLearnerSpec, load_model, save_model, train_boost
from .dataset import (
    SPLIT_PRESETS, DataError, Dataset, SplitSpec, load_csv, parse_label_mapping, read_feature_csv,
)
from .fixtures import FIXTURES, load_fixture

COMMANDS = ("train", "predict", "eval", "trials", "ops-sweep", "ratio-table", "xor-demo", "deadlock-check")
DATA_COMMANDS = ("train", "eval", "trials", "ops-sweep", "ratio-table")


def _data_args(required_labels=True):
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("data")
    g.add_argument("--data", help="CSV file")
    g.add_argument("--fixture", choices=sorted(FIXTURES), help="bundled synthetic dataset instead of --data")
    g.add_argument("--labels", help="label mapping, e.g. --labels=0=-1,1=+1"
                   + ("" if required_labels else " (drops the label column)"))
    g.add_argument("--label-column", default="-1", help="label column index or header name (default: last)")
    g.add_argument("--header", action="store_true", help="first line holds column names")
    return p


def _learner_args(default_rounds=100):
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("learner")
    g.add_argument("--learner", default=STUMP, choices=KINDS)
    g.add_argument("--ops", type=int, default=5, help="max operations per chain")
    g.add_argument("--rounds", type=int, default=default_rounds)
    g.add_argument("--tree-depth", type=int, default=7)
    g.add_argument("--tree-leaves", type=int, default=16)
    return p


def _split_args():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("split")
    g.add_argument("--train-size", type=int)
    g.add_argument("--test-size", type=int)
    g.add_argument("--preset", choices=sorted(SPLIT_PRESETS), help="train/test sizes of a UCI benchmark")
    g.add_argument("--trials", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--jobs", type=int, default=1, help="worker processes (output is independent of this)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="andorboost", description="Boosting with OR/AND chains of decision stumps.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("train", parents=[_data_args(), _learner_args()], help="train a model on a CSV")
    p.add_argument("--model", help="output model file")
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; training draws no random numbers")

    p = sub.add_parser("predict", parents=[_data_args(False)], help="predict labels with a saved model")
    p.add_argument("--model")
    p.add_argument("--out", help="output CSV of predictions")

    p = sub.add_parser("eval", parents=[_data_args()], help="error and margins of a saved model")
    p.add_argument("--model")
    p.add_argument("--out", help="optional JSON report")

    common_out = argparse.ArgumentParser(add_help=False)
    common_out.add_argument("--out", help="report file (.jsonl for JSON lines, otherwise CSV)")
    common_out.add_argument("--timing", action="store_true", help="include wall time in reports")

    p = sub.add_parser("trials", parents=[_data_args(), _learner_args(), _split_args(), common_out],
                       help="repeated random-split experiment")
    p.add_argument("--curves", help="CSV of per-round error curves")

    p = sub.add_parser("ops-sweep", parents=[_data_args(), _learner_args(50), _split_args(), common_out],
                       help="mean errors against number of operations")
    p.add_argument("--learners", default="or,and,andor", help="comma-separated learner kinds")
    p.add_argument("--ops-range", default="1-7", help="e.g. 1-7 or 1,2,3")

    p = sub.add_parser("ratio-table", parents=[_data_args(), _learner_args(), _split_args(), common_out],
                       help="test error ratios over Ada-Stump")
    p.add_argument("--learners", default="or,and,andor", help="comma-separated numerator kinds")
    p.add_argument("--reference-rounds", type=int, help="rounds for the Ada-Stump reference (default --rounds)")

    p = sub.add_parser("xor-demo", parents=[_learner_args()], help="xor decision grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-per-quadrant", type=int, default=250)
    p.add_argument("--spread", type=float, default=0.3)
    p.add_argument("--grid", type=int, default=101, help="grid points per axis over [-2, 2]")
    p.add_argument("--out", help="grid CSV (x, y, predicted_label)")

    p = sub.add_parser("deadlock-check", help="origin-line errors on xor before and after one reweighting")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-per-quadrant", type=int, default=10)
    p.add_argument("--spread", type=float, default=0.0)
    p.add_argument("--angles", type=int, default=36)
    p.add_argument("--alpha-rule", default="adaboost", choices=("adaboost", "log-odds"))
    p.add_argument("--out", help="JSON report")
    parser.set_defaults(_commands=sub.choices)
    return parser


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _validate(cfg) -> list[str]:
    errors = []
    cmd = cfg.command
    g = vars(cfg)
    if cmd in DATA_COMMANDS or cmd == "predict":
        if bool(g.get("data")) == bool(g.get("fixture")):
            errors.append(f"{cmd} needs exactly one of --data or --fixture")
        if g.get("data") and cmd != "predict" and not g.get("labels"):
            errors.append("--labels is required with --data")
        if g.get("labels"):
            try:
                parse_label_mapping(cfg.labels)
            except DataError as exc:
                errors.append(f"--labels: {exc}")
    if cmd in ("train", "predict", "eval") and not g.get("model"):
        errors.append(f"{cmd} needs --model")
    if cmd == "predict" and not g.get("out"):
        errors.append("predict needs --out")
    for flag in ("ops", "rounds", "tree_depth", "trials", "jobs", "n_per_quadrant", "reference_rounds"):
        v = g.get(flag)
        if v is not None and v < 1:
            errors.append(f"--{flag.replace('_', '-')} must be >= 1")
    if g.get("tree_leaves") is not None and cfg.tree_leaves < 2:
        errors.append("--tree-leaves must be >= 2")
    if g.get("seed") is not None and not 0 <= cfg.seed < 2**64:
        errors.append("--seed must be a 64-bit unsigned integer")
    if cmd in ("trials", "ops-sweep", "ratio-table"):
        sizes = (cfg.train_size, cfg.test_size)
        if cfg.preset and any(s is not None for s in sizes):
            errors.append("--preset cannot be combined with --train-size/--test-size")
        elif not cfg.preset and (sizes[0] is None) != (sizes[1] is None):
            errors.append("--train-size and --test-size go together")
        elif not cfg.preset and sizes[0] is None and not g.get("fixture"):
            errors.append(f"{cmd} needs --train-size/--test-size or --preset")
        for s, name in zip(sizes, ("--train-size", "--test-size")):
            if s is not None and s < 1:
                errors.append(f"{name} must be >= 1")
    if cmd in ("ops-sweep", "ratio-table"):
        kinds = [k.strip() for k in cfg.learners.split(",") if k.strip()]
        bad = [k for k in kinds if k not in KINDS]
        if bad or not kinds:
            errors.append(f"--learners: invalid {', '.join(bad) or 'empty list'} (choose from {', '.join(KINDS)})")
    if cmd == "ops-sweep":
        try:
            ops = _int_list(cfg.ops_range)
            if not ops or min(ops) < 1:
                raise ValueError
        except ValueError:
            errors.append("--ops-range must list positive counts, e.g. 1-7 or 1,3,5")
    if cmd == "xor-demo":
        if cfg.grid < 2:
            errors.append("--grid must be >= 2")
        if cfg.spread < 0:
            errors.append("--spread must be >= 0")
    if cmd == "deadlock-check":
        if cfg.angles < 4:
            errors.append("--angles must be >= 4")
        if cfg.n_per_quadrant < 1:
            errors.append("--n-per-quadrant must be >= 1")
        if cfg.spread < 0:
            errors.append("--spread must be >= 0")
    return errors


def parse_args(argv=None) -> argparse.Namespace:
    """Parse and validate; any violation exits with status 2 and usage text."""
    parser = build_parser()
    cfg = parser.parse_args(argv)
    errors = _validate(cfg)
    if errors:
        cfg._commands[cfg.command].error("; ".join(errors))
    return cfg


def _spec(cfg, kind=None, ops=None) -> WeakLearnerSpec:
    return WeakLearnerSpec(kind or cfg.learner, max_ops=ops or cfg.ops,
                           max_depth=cfg.tree_depth, max_leaves=cfg.tree_leaves)


def _label_column(cfg):
    col = cfg.label_column
    return int(col) if col.lstrip("-").isdigit() else col


def _dataset(cfg) -> Dataset:
    if cfg.fixture:
        return load_fixture(cfg.fixture)
    return load_csv(cfg.data, _label_column(cfg), cfg.labels, cfg.header)


def _split(cfg, data: Dataset) -> SplitSpec:
    if cfg.preset:
        n_train, n_test = SPLIT_PRESETS[cfg.preset]
    elif cfg.train_size is not None:
        n_train, n_test = cfg.train_size, cfg.test_size
    else:
        n_train, n_test = FIXTURES[cfg.fixture][1]
    spec = SplitSpec(n_train, n_test, cfg.seed)
    spec.check(data.n_samples)
    return spec


def _write_reports(cfg, reports) -> None:
    if not cfg.out:
        return
    if cfg.out.endswith(".jsonl"):
        ex.write_text(cfg.out, ex.trials_to_jsonl(reports, cfg.timing))
    else:
        ex.write_text(cfg.out, ex.trials_to_csv(reports, cfg.timing))


def _arrow(path) -> str:
    return f" -> {path}" if path else ""


def _cmd_train(cfg):
    data = _dataset(cfg)
    spec = _spec(cfg)
    model = train_boost(data, spec, cfg.rounds)
    save_model(model, cfg.model)
    err = ex.evaluate(model, data)
    print(f"train: {spec.label}, {len(model)}/{cfg.rounds} rounds, training error {err:.6g}{_arrow(cfg.model)}")


def _cmd_predict(cfg):
    model = load_model(cfg.model)
    if cfg.fixture:
        X = load_fixture(cfg.fixture).features
    else:
        drop = _label_column(cfg) if cfg.labels else None
        X = read_feature_csv(cfg.data, cfg.header, drop)
    if len(model) == 0:
        raise ValueError("model has no weak classifiers")
    f = model.decision_function(X)
    pred = np.where(f > 0, 1, -1)
    post = model.posterior(X)
    lines = ["predicted_label,posterior"] + [f"{int(p)},{q:.6g}" for p, q in zip(pred, post)]
    ex.write_text(cfg.out, "\n".join(lines) + "\n")
    print(f"predict: {len(pred)} samples, {int(np.sum(pred > 0))} predicted +1{_arrow(cfg.out)}")


def _cmd_eval(cfg):
    model = load_model(cfg.model)
    data = _dataset(cfg)
    err = ex.evaluate(model, data)
    rec = {"n_samples": data.n_samples, "error": float(f"{err:.6g}"), "rounds": len(model)}
    if len(model):
        q = np.quantile(model.margin(data.features, data.labels), ex.MARGIN_QUANTILES)
        rec["margin_quantiles"] = [float(f"{v:.6g}") for v in q]
    if cfg.out:
        ex.write_text(cfg.out, json.dumps(rec, sort_keys=True) + "\n")
    print(f"eval: error {err:.6g} on {data.n_samples} samples{_arrow(cfg.out)}")


def _cmd_trials(cfg):
    data = _dataset(cfg)
    spec = _spec(cfg)
    reports = ex.run_trials(data, spec, cfg.rounds, _split(cfg, data), cfg.trials, cfg.seed, cfg.jobs)
    _write_reports(cfg, reports)
    if cfg.curves:
        ex.write_text(cfg.curves, ex.curves_to_csv(reports))
    s = ex.summarize(reports)
    print(f"trials: {spec.label} on {data.name}, {cfg.trials} trials x {cfg.rounds} rounds: "
          f"mean test error {s['mean_test']:.6g} (std {s['std_test']:.6g}), "
          f"mean train error {s['mean_train']:.6g}{_arrow(cfg.out)}")


def _cmd_ops_sweep(cfg):
    data = _dataset(cfg)
    kinds = [k.strip() for k in cfg.learners.split(",") if k.strip()]
    rows = ex.ops_sweep(data, kinds, cfg.rounds, _int_list(cfg.ops_range), _split(cfg, data),
                        cfg.trials, cfg.seed, cfg.jobs, max_depth=cfg.tree_depth, max_leaves=cfg.tree_leaves)
    if cfg.out:
        ex.write_text(cfg.out, ex.sweep_to_csv(rows))
    best = min(rows, key=lambda r: r.mean_test)
    print(f"ops-sweep: {len(rows)} rows on {data.name}; lowest mean test error {best.mean_test:.6g} "
          f"({best.kind}, {best.ops} ops){_arrow(cfg.out)}")


def _cmd_ratio_table(cfg):
    data = _dataset(cfg)
    kinds = [k.strip() for k in cfg.learners.split(",") if k.strip()]
    specs = [_spec(cfg, k) for k in kinds]
    rows = ex.ratio_table(data, specs, _spec(cfg, STUMP), cfg.rounds, cfg.reference_rounds,
                          _split(cfg, data), cfg.trials, cfg.seed, cfg.jobs)
    if cfg.out:
        ex.write_text(cfg.out, ex.ratios_to_csv(rows))
    cells = ", ".join(f"{r.numerator_spec.label}/Ada-Stump {ex.format_ratio(r.ratio)}" for r in rows)
    print(f"ratio-table: {data.name}: {cells}{_arrow(cfg.out)}")


def _cmd_xor_demo(cfg):
    spec = _spec(cfg)
    (res,) = ex.xor_demo(cfg.n_per_quadrant, cfg.spread, cfg.seed, [spec], cfg.rounds, cfg.grid)
    if cfg.out:
        ex.write_text(cfg.out, ex.grid_to_csv(res))
    print(f"xor-demo: {spec.label}, {res.accepted_rounds}/{cfg.rounds} rounds: "
          f"train error {res.train_error:.6g}, test error {res.test_error:.6g}{_arrow(cfg.out)}")


def _cmd_deadlock(cfg):
    rep = ex.origin_line_deadlock_check(cfg.n_per_quadrant, cfg.seed, cfg.angles, cfg.spread,
                                        alpha_rule=cfg.alpha_rule)
    if cfg.out:
        ex.write_text(cfg.out, json.dumps(rep.to_record(), sort_keys=True) + "\n")
    print(f"deadlock-check: {cfg.angles} origin lines, max |error - 0.5| = {rep.max_deviation:.6g}; "
          f"after reweighting by angle {np.degrees(rep.first_angle):.6g} deg the best line is "
          f"{np.degrees(rep.next_angle):.6g} deg{_arrow(cfg.out)}")


HANDLERS = {
    "train": _cmd_train, "predict": _cmd_predict, "eval": _cmd_eval, "trials": _cmd_trials,
    "ops-sweep": _cmd_ops_sweep, "ratio-table": _cmd_ratio_table, "xor-demo": _cmd_xor_demo,
    "deadlock-check": _cmd_deadlock,
}


def dispatch(cfg) -> int:
    try:
        HANDLERS[cfg.command](cfg)
    except (DataError, ModelFormatError, OSError, ValueError, KeyError) as exc:
        print(f"andorboost {cfg.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    return dispatch(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
