import pytest

from psicalc.psi_context import get_context


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next(
        (m for name, m in sys.modules.items()
         if name.rpartition(".")[2] == "test_acceptance" and m is not None),
        None,
    )
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def nat():
    return get_context("natural", 24)


@pytest.fixture(scope="session")
def qsym():
    return get_context("q", 16)


@pytest.fixture(scope="session")
def qnum():
    return get_context("q=3/2", 16)


@pytest.fixture(scope="session")
def fib():
    return get_context("fib", 16)
