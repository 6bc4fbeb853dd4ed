import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"

# criterion number -> [title, tests passed, tests failed or skipped]
_criteria = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        number, title = mark.args
        _criteria.setdefault(number, [title, 0, 0])
        item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    if report.failed or report.skipped:
        _criteria[number][2] += 1
    elif report.when == "call":
        _criteria[number][1] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed, bad = _criteria[number]
        verdict = "FAIL" if bad else "PASS" if passed else "NOT RUN"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")


@pytest.fixture
def fixtures_dir():
    return FIXTURES
