import mpmath
import pytest

from apery.precision import PrecisionContext


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("APERY_CACHE_DIR", str(tmp_path / "cache"))
    yield


@pytest.fixture
def ctx30():
    return PrecisionContext(30)


@pytest.fixture
def ctx20():
    return PrecisionContext(20)


def close(a, b, rel):
    """Relative closeness in mpmath at high precision."""
    with mpmath.workdps(60):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        scale = max(abs(b), mpmath.mpf(10) ** -50)
        return abs(a - b) / scale <= rel


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
