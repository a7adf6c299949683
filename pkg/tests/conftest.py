import pytest

from fanopoly.constructions import (
    bipyramid,
    cross_polytope,
    del_pezzo,
    direct_sum,
    polygon,
    pseudo_del_pezzo,
    segment,
)
from fanopoly.polytope import LatticePolytope

EXAMPLE_A = [
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (1, -1, 0), (-1, 1, 0), (1, 0, -1),
    (-1, 0, 0),
]
EXAMPLE_B = [
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, -1, 0, 0), (-1, 1, 0, 0),
    (-1, 0, 0, 0), (0, -1, 0, 0),
    (1, -1, -1, 0), (-1, 1, 0, -1),
]


@pytest.fixture
def A():
    return LatticePolytope(EXAMPLE_A)


@pytest.fixture
def B():
    return LatticePolytope(EXAMPLE_B)


def str_fixtures():
    """Named small STR polytopes used across several test modules."""
    P6 = polygon("P6")
    return {
        "P3": polygon("P3"),
        "P4a": polygon("P4a"),
        "P4b": polygon("P4b"),
        "P5": polygon("P5"),
        "P6": P6,
        "segment": segment(),
        "cross3": cross_polytope(3),
        "DP4": del_pezzo(4),
        "PDP4": pseudo_del_pezzo(4),
        "A": LatticePolytope(EXAMPLE_A),
        "B": LatticePolytope(EXAMPLE_B),
        "bipyr-P6": bipyramid(P6),
        "skew-P6": bipyramid(P6, (1, 0)),
        "P5+P6": direct_sum(polygon("P5"), P6),
    }


# -- acceptance summary ---------------------------------------------------------

_criteria: dict[int, list[str]] = {}
_criterion_titles: dict[int, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            _criterion_titles[m.args[0]] = m.args[1]


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = getattr(report, "criterion", None)
    if n is not None:
        _criteria.setdefault(n, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        outcomes = _criteria[n]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {_criterion_titles.get(n, '')}")
