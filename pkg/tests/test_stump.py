import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from andorboost.dataset import Dataset, make_xor, uniform_weights
from andorboost.stump import GE, LT, DecisionStump, train_stump, weighted_error

from conftest import random_dataset
from oracles import brute_force_stump


def test_predict_eq1():
    assert DecisionStump(0, 2.5, GE).predict([3.0]) == 1
    assert DecisionStump(0, 2.5, LT).predict([3.0]) == -1
    # equality falls on the >= side
    assert DecisionStump(1, 0.0, GE).predict([-5.0, 0.0]) == 1


def test_predict_out_of_range():
    with pytest.raises(ValueError):
        DecisionStump(2, 0.0).predict([1.0, 2.0])


def test_bad_direction():
    with pytest.raises(ValueError):
        DecisionStump(0, 0.0, "GT")


def test_weighted_error_examples():
    d = Dataset([[0.0], [1.0], [2.0], [3.0]], [1, -1, 1, -1])
    assert weighted_error(DecisionStump(0, -1.0, GE), Dataset(d.features, [1] * 4), uniform_weights(4)) == 0
    # stump x >= 1.5 predicts (-,-,+,+): wrong on samples 1 and 4
    w = np.array([0.4, 0.3, 0.2, 0.1])
    assert weighted_error(DecisionStump(0, 1.5, GE), d, w) == 0.5


@pytest.mark.parametrize("direction", [GE, LT])
@pytest.mark.parametrize("feature", [0, 1])
@pytest.mark.parametrize("threshold", [-2.0, -1.0, 0.0, 0.5, 1.0, 3.0])
def test_noiseless_xor_every_stump_is_half(direction, feature, threshold):
    d = make_xor(5, spread=0.0)
    assert weighted_error(DecisionStump(feature, threshold, direction), d, uniform_weights(len(d))) == 0.5


def test_train_simple():
    d = Dataset([[1.0], [2.0], [3.0], [4.0]], [-1, -1, 1, 1])
    stump, err = train_stump(d, uniform_weights(4))
    assert stump == DecisionStump(0, 2.5, GE)
    assert err == 0


def test_train_all_positive_gives_constant():
    d = Dataset([[1.0, 5.0], [2.0, 3.0], [3.0, 4.0]], [1, 1, 1])
    stump, err = train_stump(d, uniform_weights(3))
    assert err == 0
    assert stump.feature_index == 0 and stump.direction == GE
    assert stump.threshold < 1.0


def test_train_constant_column():
    d = Dataset([[2.0], [2.0], [2.0]], [1, -1, -1])
    stump, err = train_stump(d, uniform_weights(3))
    assert np.all(stump.predict(d.features) == -1)
    assert err == pytest.approx(1 / 3)


def test_tie_prefers_split_over_constant():
    d = make_xor(1, spread=0.0)
    stump, err = train_stump(d, uniform_weights(4))
    assert err == 0.5
    assert stump == DecisionStump(0, 0.0, GE)


def test_random_8x3_matches_oracle(rng):
    for _ in range(20):
        d = random_dataset(rng, 8, 3)
        w = rng.dirichlet(np.ones(8))
        stump, err = train_stump(d, w)
        _, best, pred = brute_force_stump(d.features, d.labels, w)
        assert err == best
        assert err == weighted_error(stump, d, w)
        np.testing.assert_array_equal(stump.predict(d.features), pred)


@st.composite
def small_problem(draw):
    n = draw(st.integers(1, 12))
    d = draw(st.integers(1, 4))
    distinct = draw(st.sampled_from([None, 2, 3]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    data = random_dataset(rng, n, d, distinct)
    kind = draw(st.sampled_from(["dirichlet", "uniform", "sparse"]))
    if kind == "uniform":
        w = uniform_weights(n)
    else:
        w = rng.dirichlet(np.ones(n))
        if kind == "sparse":
            w = np.where(rng.random(n) < 0.4, 0.0, w)
    return data, w


@given(small_problem())
@settings(max_examples=300, deadline=None)
def test_oracle_equivalence(problem):
    data, w = problem
    stump, err = train_stump(data, w)
    _, best, pred = brute_force_stump(data.features, data.labels, w)
    assert err == best
    assert err == weighted_error(stump, data, w)
    np.testing.assert_array_equal(stump.predict(data.features), pred)


@given(small_problem())
@settings(max_examples=100, deadline=None)
def test_monotone_rescaling(problem):
    data, w = problem
    stump, _ = train_stump(data, w)
    X = data.features.copy()
    X[:, 0] = np.exp(X[:, 0] / 4.0) * 3.0 + 1.0
    other = Dataset(X, data.labels)
    stump2, _ = train_stump(other, w)
    np.testing.assert_array_equal(stump.predict(data.features), stump2.predict(other.features))


@given(small_problem())
@settings(max_examples=100, deadline=None)
def test_uniform_error_is_fraction_wrong(problem):
    data, _ = problem
    w = uniform_weights(data.n_samples)
    stump, err = train_stump(data, w)
    wrong = np.count_nonzero(stump.predict(data.features) != data.labels)
    assert 0.0 <= err <= 1.0
    assert err == pytest.approx(wrong / data.n_samples, abs=1e-12)


def test_deterministic(rng):
    d = random_dataset(rng, 40, 5, distinct=4)
    w = rng.dirichlet(np.ones(40))
    assert train_stump(d, w) == train_stump(d, w)


def test_unnormalized_and_zero_weights(rng):
    d = random_dataset(rng, 30, 3)
    w = rng.random(30) * 7.0
    w[::3] = 0.0
    stump, err = train_stump(d, w)
    _, best, _ = brute_force_stump(d.features, d.labels, w)
    assert err == best


def test_all_zero_weights(rng):
    d = random_dataset(rng, 10, 2)
    stump, err = train_stump(d, np.zeros(10))
    assert err == 0.0


def test_large_magnitude_sentinels():
    d = Dataset([[1e300], [1e300]], [1, 1])
    stump, err = train_stump(d, uniform_weights(2))
    assert err == 0
    assert np.all(stump.predict(d.features) == 1)


def test_adjacent_floats_split():
    a = 1.0
    b = np.nextafter(1.0, 2.0)
    d = Dataset([[a], [b]], [-1, 1])
    stump, err = train_stump(d, uniform_weights(2))
    assert err == 0
    assert stump.predict(d.features).tolist() == [-1, 1]


def test_serialization_roundtrip():
    s = DecisionStump(3, 0.1 + 0.2, LT)
    assert DecisionStump.from_dict(s.to_dict()) == s
