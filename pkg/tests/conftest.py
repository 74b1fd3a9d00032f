import json
import random
from pathlib import Path

import pytest

from unicount import convex_hull_2d, minkowski_sum, reflect

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "unicount" / "fixtures"

X_VERTS = [(0, 0), (2, 0), (1, 1)]
Y_VERTS = [(0, 0), (1, 1), (0, 3)]
SQUARE_VERTS = [(0, 0), (1, 0), (1, 1), (0, 1)]


@pytest.fixture
def X():
    return convex_hull_2d(X_VERTS)


@pytest.fixture
def Y():
    return convex_hull_2d(Y_VERTS)


@pytest.fixture
def square():
    return convex_hull_2d(SQUARE_VERTS)


@pytest.fixture
def P(X, Y):
    return minkowski_sum(X, Y)


@pytest.fixture
def Q(X, Y):
    return minkowski_sum(X, reflect(Y))


@pytest.fixture
def rng():
    return random.Random(20261014)


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def load_fixture(name):
    return json.loads((FIXTURES / name).read_text())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = (yield).get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
