import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from andorboost.boosting import AND_OR, OR_CHAIN, STUMP, BoostedEnsemble, WeakLearnerSpec
from andorboost.dataset import Dataset, SplitSpec, make_xor
from andorboost.experiments import (
    TRIAL_CSV_COLUMNS, curves_to_csv, evaluate, format_ratio, grid_to_csv, ops_sweep,
    origin_line_deadlock_check, origin_line_predictions, ratio_table, ratios_to_csv,
    run_trials, summarize, sweep_to_csv, trials_to_csv, trials_to_jsonl, xor_demo,
)
from andorboost.fixtures import fixture_split, load_fixture

XOR = make_xor(60, 0.3, 11)
XOR_SPLIT = SplitSpec(160, 80, 3)


class TestRunTrials:
    def test_deterministic(self):
        a = run_trials(XOR, WeakLearnerSpec(OR_CHAIN, max_ops=2), 5, XOR_SPLIT, n_trials=2)
        b = run_trials(XOR, WeakLearnerSpec(OR_CHAIN, max_ops=2), 5, XOR_SPLIT, n_trials=2)
        assert a == b
        assert trials_to_jsonl(a) == trials_to_jsonl(b)

    def test_seeds_and_order(self):
        reps = run_trials(XOR, WeakLearnerSpec(), 3, XOR_SPLIT, n_trials=3, base_seed=40)
        assert [r.trial for r in reps] == [0, 1, 2]
        assert [r.seed for r in reps] == [40, 41, 42]

    def test_curves_consistent(self):
        for r in run_trials(XOR, WeakLearnerSpec(AND_OR, max_ops=2), 6, XOR_SPLIT, n_trials=2):
            assert 0 <= r.train_error <= 1 and 0 <= r.test_error <= 1
            assert len(r.per_round_train_curve) == len(r.per_round_test_curve) == r.accepted_rounds
            assert r.per_round_train_curve[-1] == r.train_error
            assert r.per_round_test_curve[-1] == r.test_error
            assert r.per_round_connective is not None and len(r.per_round_connective) == r.accepted_rounds

    def test_single_round(self):
        (r,) = run_trials(XOR, WeakLearnerSpec(STUMP), 1, XOR_SPLIT, n_trials=1)
        assert r.accepted_rounds <= 1
        if r.accepted_rounds:
            assert r.per_round_train_curve[-1] == r.train_error

    def test_prefix_consistent(self):
        short = run_trials(XOR, WeakLearnerSpec(OR_CHAIN, max_ops=2), 4, XOR_SPLIT, n_trials=1)[0]
        long = run_trials(XOR, WeakLearnerSpec(OR_CHAIN, max_ops=2), 9, XOR_SPLIT, n_trials=1)[0]
        assert long.per_round_train_curve[:4] == short.per_round_train_curve
        assert long.per_round_test_curve[:4] == short.per_round_test_curve

    def test_empty_ensemble_predicts_negative(self):
        d = Dataset(np.zeros((4, 1)), [1, -1, -1, -1])
        assert evaluate(BoostedEnsemble((), ()), d) == 0.25

    def test_parallel_matches_serial(self):
        spec = WeakLearnerSpec(AND_OR, max_ops=2)
        a = run_trials(XOR, spec, 4, XOR_SPLIT, n_trials=3, jobs=1)
        b = run_trials(XOR, spec, 4, XOR_SPLIT, n_trials=3, jobs=2)
        assert a == b

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            run_trials(XOR, WeakLearnerSpec(), 3, XOR_SPLIT, n_trials=0)
        with pytest.raises(ValueError):
            run_trials(XOR, WeakLearnerSpec(), 3, SplitSpec(200, 100, 0))

    def test_summary(self):
        reps = run_trials(XOR, WeakLearnerSpec(), 3, XOR_SPLIT, n_trials=3)
        s = summarize(reps[::-1])
        te = [r.test_error for r in reps]
        assert s["mean_test"] == pytest.approx(np.mean(te))
        assert s["std_test"] == pytest.approx(np.std(te))
        assert s["n_trials"] == 3


def test_length_one_or_matches_stump_per_trial():
    a = run_trials(XOR, WeakLearnerSpec(STUMP), 10, XOR_SPLIT, n_trials=3)
    b = run_trials(XOR, WeakLearnerSpec(OR_CHAIN, max_ops=1), 10, XOR_SPLIT, n_trials=3)
    for ra, rb in zip(a, b):
        np.testing.assert_array_equal(ra.test_predictions, rb.test_predictions)


class TestOpsSweep:
    def test_shape_and_xor_gain(self):
        rows = ops_sweep(XOR, [OR_CHAIN, STUMP], 8, range(1, 4), XOR_SPLIT, n_trials=2)
        assert len(rows) == 6
        by = {(r.kind, r.ops): r for r in rows}
        assert by[(OR_CHAIN, 2)].mean_test < by[(OR_CHAIN, 1)].mean_test
        assert by[(OR_CHAIN, 1)].mean_test == by[(STUMP, 1)].mean_test

    def test_csv(self):
        rows = ops_sweep(XOR, [OR_CHAIN], 3, [1, 2], XOR_SPLIT, n_trials=1)
        text = sweep_to_csv(rows)
        assert text.endswith("\n") and text.count("\n") == 3
        assert text.splitlines()[0] == "learner,ops,rounds,mean_train,std_train,mean_test,std_test"


class TestRatioTable:
    def test_self_ratio_is_one(self):
        rows = ratio_table(XOR, [WeakLearnerSpec(STUMP), WeakLearnerSpec(AND_OR, max_ops=2)],
                           rounds=10, split_spec=XOR_SPLIT, n_trials=2)
        assert rows[0].ratio == 1.0
        assert rows[1].ratio < 1.0
        assert rows[1].numerator_mean < rows[1].denominator_mean

    def test_zero_reference_flagged(self):
        X = np.arange(40.0).reshape(-1, 1)
        d = Dataset(X, np.where(X[:, 0] >= 20, 1, -1), name="sep")
        rows = ratio_table(d, [WeakLearnerSpec(AND_OR)], rounds=5, split_spec=SplitSpec(30, 10, 0),
                           n_trials=2)
        assert rows[0].ratio is None and not rows[0].available
        assert "n/a" in ratios_to_csv(rows)

    def test_format(self):
        assert format_ratio(0.608) == "60.8%"
        assert format_ratio(1.0) == "100.0%"
        assert format_ratio(None) == "n/a"

    def test_rounds_alignment(self):
        with pytest.raises(ValueError):
            ratio_table(XOR, [WeakLearnerSpec()], rounds=[1, 2], split_spec=XOR_SPLIT)
        with pytest.raises(ValueError):
            ratio_table(XOR, [WeakLearnerSpec()], rounds=1)


class TestXorDemo:
    def test_grid(self):
        (res,) = xor_demo(20, 0.3, 0, [WeakLearnerSpec(OR_CHAIN, max_ops=2)], 5, grid_resolution=5)
        assert res.grid.shape == (25, 3)
        assert res.grid[:, :2].min() == -2.0 and res.grid[:, :2].max() == 2.0
        assert set(np.unique(res.grid[:, 2])) <= {-1.0, 1.0}
        text = grid_to_csv(res)
        assert text.splitlines()[0] == "x,y,predicted_label"
        assert len(text.splitlines()) == 26
        # the positive region covers the (+,+) and (-,-) corners
        pos = {tuple(p) for p in res.positive_points.tolist()}
        assert (1.0, 1.0) in pos and (-1.0, -1.0) in pos and (1.0, -1.0) not in pos

    def test_deterministic(self):
        specs = [WeakLearnerSpec(STUMP), WeakLearnerSpec(AND_OR, max_ops=2)]
        a = xor_demo(20, 0.3, 1, specs, [20, 5], grid_resolution=7)
        b = xor_demo(20, 0.3, 1, specs, [20, 5], grid_resolution=7)
        for ra, rb in zip(a, b):
            np.testing.assert_array_equal(ra.grid, rb.grid)
            assert (ra.train_error, ra.test_error) == (rb.train_error, rb.test_error)

    def test_bad_grid(self):
        with pytest.raises(ValueError):
            xor_demo(grid_resolution=1)


class TestDeadlock:
    @pytest.mark.parametrize("n_angles", [4, 36, 360, 1001])
    def test_symmetric_xor_all_half(self, n_angles):
        r = origin_line_deadlock_check(n_per_quadrant=7, n_angles=n_angles)
        assert r.max_deviation < 1e-12
        assert np.all(r.errors == 0.5)

    @given(st.integers(1, 30), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_closed_under_negation(self, n, seed):
        # any sample set symmetric under x -> -x with the same label
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(n, 2))
        y = rng.choice([-1, 1], size=n)
        d = Dataset(np.vstack([X, -X]), np.concatenate([y, y]))
        r = origin_line_deadlock_check(data=d, n_angles=24)
        assert r.max_deviation < 1e-12

    def test_lines_are_odd(self, rng):
        X = rng.normal(size=(50, 2))
        X[:5, 1] = 0.0
        X[5:10, 0] = 0.0
        angles = np.linspace(0, 2 * np.pi, 16, endpoint=False)
        np.testing.assert_array_equal(origin_line_predictions(-X, angles), -origin_line_predictions(X, angles))

    def _lopsided(self, n=10):
        # one extra (+,+) point breaks the symmetry so the first line has eps < 0.5
        d = make_xor(n, 0.0)
        return Dataset(np.vstack([d.features, [[1.0, 1.0]]]), np.append(d.labels, 1))

    def test_log_odds_reweight_favours_complement(self):
        d = self._lopsided()
        r = origin_line_deadlock_check(data=d, n_angles=36, alpha_rule="log-odds")
        assert r.first_error == pytest.approx(20 / 41, abs=1e-15)
        H = origin_line_predictions(d.features, r.angles)
        # best next line acts exactly like the complement of the first
        np.testing.assert_array_equal(H[:, r.next_index], -H[:, r.first_index])
        comp = (r.first_index + 18) % 36
        assert r.errors_after[comp] == r.errors_after.min()
        assert r.errors_after[comp] == pytest.approx(r.first_error, abs=1e-12)

    def test_adaboost_reweight_balances_both(self):
        d = self._lopsided()
        r = origin_line_deadlock_check(data=d, n_angles=36, alpha_rule="adaboost")
        comp = (r.first_index + 18) % 36
        assert r.errors_after[r.first_index] == pytest.approx(0.5, abs=1e-12)
        assert r.errors_after[comp] == pytest.approx(0.5, abs=1e-12)
        assert r.errors_after[r.next_index] < 0.5

    def test_bad_args(self):
        with pytest.raises(ValueError):
            origin_line_deadlock_check(n_angles=3)
        with pytest.raises(ValueError):
            origin_line_deadlock_check(alpha_rule="other")


class TestReports:
    def _reports(self):
        return run_trials(XOR, WeakLearnerSpec(AND_OR, max_ops=2), 3, XOR_SPLIT, n_trials=2)

    def test_csv_columns(self):
        text = trials_to_csv(self._reports())
        lines = text.splitlines()
        assert lines[0].split(",") == list(TRIAL_CSV_COLUMNS)
        assert len(lines) == 3 and text.endswith("\n")
        assert "wall_time" not in text
        assert "wall_time" in trials_to_csv(self._reports(), timing=True)

    def test_six_significant_digits(self):
        text = trials_to_csv(self._reports())
        for line in text.splitlines()[1:]:
            for cell in line.split(","):
                if "." in cell:
                    digits = cell.lstrip("-").replace(".", "").split("e")[0].lstrip("0")
                    assert len(digits) <= 6

    def test_jsonl(self):
        recs = [json.loads(l) for l in trials_to_jsonl(self._reports()).splitlines()]
        assert len(recs) == 2 and recs[0]["learner"] == AND_OR
        assert len(recs[0]["train_curve"]) == recs[0]["accepted_rounds"]
        assert "wall_time" not in recs[0]

    def test_curves(self):
        text = curves_to_csv(self._reports())
        assert text.splitlines()[0] == "learner,max_ops,trial,round,train_error,test_error"
        assert len(text.splitlines()) == 1 + sum(r.accepted_rounds for r in self._reports())


def test_fixtures_load_and_split():
    for name in ("noisy_xor", "two_conjunctions"):
        d = load_fixture(name)
        assert d.n_samples == 800 and d.name == name
        s = fixture_split(name, 0)
        assert s.n_train + s.n_test <= d.n_samples
    with pytest.raises(KeyError):
        load_fixture("nope")
