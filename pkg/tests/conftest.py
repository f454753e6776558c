import pytest

from skewsnf import build_incidence, make_geometry

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


_MATRICES = {}


def incidence(p, t, n_plus_1, r, s, relation="skew"):
    """Session-wide cache of generated incidence matrices (as int64 arrays)."""
    key = (p, t, n_plus_1, r, s, relation)
    if key not in _MATRICES:
        _MATRICES[key] = build_incidence(make_geometry(p, t, n_plus_1), r, s, relation).to_int()
    return _MATRICES[key]
