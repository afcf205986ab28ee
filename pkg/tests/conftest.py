from fractions import Fraction
from pathlib import Path

import pytest

from confspace.manifold import _unit_cups, make_manifold

FIXTURES = Path(__file__).parent / "fixtures"


def torus():
    hc = {0: 1, 1: 2, 2: 1}
    cup = _unit_cups(hc)
    cup[(1, 0, 1, 1)] = {0: Fraction(1)}
    cup[(1, 1, 1, 0)] = {0: Fraction(-1)}
    return make_manifold("T^2", 2, False, True, hc, cup=cup, betti={0: 1, 1: 2, 2: 1})


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def t2():
    return torus()


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_record(request):
    """Record one PASS/FAIL line for the criterion a test implements."""
    label = request.node.get_closest_marker("criterion").args[0]
    yield
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}")


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion implemented by the test")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
