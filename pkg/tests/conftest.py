import pytest

from xmodkit import fingroup as fg

# filled in by test_acceptance; printed once at the end of the run
CRITERIA: dict = {}


@pytest.fixture(scope="session")
def groups6():
    return fg.small_groups(6)


@pytest.fixture(scope="session")
def z2():
    return fg.cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return fg.cyclic(3)


@pytest.fixture(scope="session")
def s3():
    return fg.group_by_name("S3")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])
