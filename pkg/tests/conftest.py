from fractions import Fraction

import pytest

from latticetodd.algebra import Polynomial
from latticetodd.matroid import VectorConfig

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    if report.when == "call" or report.outcome == "failed":
        previous = _criteria.get(number, (title, "PASS"))[1]
        outcome = "FAIL" if report.outcome == "failed" or previous == "FAIL" else "PASS"
        _criteria[number] = (title, outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        terminalreporter.write_line(f"criterion {number} ({title}): {outcome}")


def poly(dim, terms):
    """Polynomial from {exponent: coefficient}, coefficients given as str or int."""
    return Polynomial(dim, {tuple(e): Fraction(c) for e, c in terms.items()})


@pytest.fixture
def example32():
    return VectorConfig.from_matrix([[1, 0, 1], [0, 1, 1]])


@pytest.fixture
def pentagon():
    return VectorConfig.from_matrix([[1, 0, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 1, 1]])


@pytest.fixture
def k4():
    return VectorConfig.from_matrix([[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]])
