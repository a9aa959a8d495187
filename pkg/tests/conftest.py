import pytest

_ACCEPTANCE: dict[int, tuple[str, list]] = {}


@pytest.fixture
def acceptance():
    """Record one acceptance criterion; fails the test when any sub-check failed."""

    def record(k: int, title: str, failures: list):
        _ACCEPTANCE[k] = (title, list(failures))
        assert not failures, f"criterion {k} ({title}) failed: {failures}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        title, failures = _ACCEPTANCE[k]
        status = "PASS" if not failures else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {k:2d}: {title}")
        for f in failures:
            terminalreporter.write_line(f"         - {f}")
