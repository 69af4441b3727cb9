import math

import pytest

from causalcover.cone import ConeGeometry, sector_angle

THETA = sector_angle(0.5)


@pytest.fixture(scope="session")
def theta():
    return THETA


@pytest.fixture(scope="session")
def cones():
    """The geometries used throughout: the A = 1/2 cone, two cyclic covers, the universal cover."""
    return {
        "base": ConeGeometry.base(THETA),
        "cyclic2": ConeGeometry.cyclic(THETA, 2),
        "cyclic3": ConeGeometry.cyclic(THETA, 3),
        "universal": ConeGeometry.universal(THETA),
    }


@pytest.fixture(scope="session")
def wide_base():
    """A base cone with angle in (pi, 2pi): convex by the sharper rule, outside the classical bound."""
    return ConeGeometry.base(1.5 * math.pi)


# acceptance criteria: one PASS/FAIL line each, printed in the terminal summary

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "ran": False})
    if call.when == "call":
        entry["ran"] = True
    if call.excinfo is not None:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["ok"] and e["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {e['title']}")
