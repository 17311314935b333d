import itertools

import pytest
from hypothesis import strategies as st

from exclab.perm import ColoredPermutation

_acceptance_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, title = marker.args
        _acceptance_results.append((number, title, item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, name, ok in sorted(_acceptance_results):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number} [{status}] {title} ({name})")


def all_elements(r, n):
    """Reference enumeration built independently of exclab.perm.enumerate_elements."""
    for tau in itertools.permutations(range(1, n + 1)):
        for z in itertools.product(range(r), repeat=n):
            yield ColoredPermutation(r, tau, z)


@st.composite
def colored_permutations(draw, r=None, n=None, max_r=4, max_n=6):
    r = draw(st.integers(1, max_r)) if r is None else r
    n = draw(st.integers(1, max_n)) if n is None else n
    tau = draw(st.permutations(range(1, n + 1)))
    z = draw(st.lists(st.integers(0, r - 1), min_size=n, max_size=n))
    return ColoredPermutation(r, tuple(tau), tuple(z))
