import numpy as np
import pytest

from andorboost.dataset import Dataset

_ACCEPTANCE = []


def random_dataset(rng, n, d, distinct=None):
    """Random features; ``distinct`` limits each column to a few values to force ties."""
    if distinct:
        X = rng.integers(0, distinct, size=(n, d)).astype(float)
    else:
        X = rng.normal(size=(n, d))
    y = rng.choice([-1, 1], size=n)
    return Dataset(X, y)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if "test_acceptance" not in item.nodeid:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if hasattr(item, "callspec"):
            doc += f" [{item.callspec.id}]"
        _ACCEPTANCE.append((doc, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {doc}")
