import pytest

from oracles import sympy_cyclotomic


@pytest.fixture(scope="session")
def oracle_phi():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = sympy_cyclotomic(n)
        return cache[n]

    return get


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion."""
    entry = {"name": request.node.name, "detail": "", "passed": False}
    _ACCEPTANCE.append(entry)
    yield entry


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        for entry in _ACCEPTANCE:
            if entry["name"] == item.name:
                entry["passed"] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _ACCEPTANCE:
        mark = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"{mark} {entry['name']}: {entry['detail']}")
