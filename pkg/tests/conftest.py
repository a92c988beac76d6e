import pytest

from qcomposed.search import ENGINE_CACHE

RESULT_LINES: list[str] = []


@pytest.fixture
def record_line():
    return RESULT_LINES.append


def pytest_terminal_summary(terminalreporter):
    if RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in RESULT_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(autouse=True, scope="module")
def _fresh_engine_cache():
    ENGINE_CACHE.clear()
    yield
