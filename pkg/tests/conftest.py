import pytest

from rankone.construction import make_explicit, make_named, make_the_ts

ACCEPTANCE = {}


def record(number, ok, detail):
    ACCEPTANCE[number] = (ok, detail)


@pytest.fixture
def ts22():
    return make_the_ts(2, 2)


@pytest.fixture
def chacon():
    return make_named("chacon")


@pytest.fixture
def ferenczi():
    return make_named("ferenczi")


@pytest.fixture
def odometer():
    return make_explicit([(0, 0, 0)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
