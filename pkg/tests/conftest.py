from pathlib import Path

import pytest

from sierpdist import read_graph

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: dict[int, tuple[str, str, list[str]]] = {}


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.el"


@pytest.fixture
def load():
    return lambda name: read_graph(fixture_path(name))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    notes = [value for key, value in report.user_properties if key == "note"]
    if report.when == "call":
        _criteria[number] = ("PASS" if report.passed else "FAIL", title, notes)
    elif report.failed:
        _criteria[number] = ("FAIL", title, notes)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, notes = _criteria[number]
        terminalreporter.write_line(f"criterion {number} [{status}] {title}")
        for note in notes:
            terminalreporter.write_line(f"    {note}")
