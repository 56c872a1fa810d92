from hypothesis import settings

# single-core sandbox: timing is noisy, so no per-example deadline
settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

import pytest

_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line: report(number, title, passed, detail)."""

    def add(number: int, title: str, passed: bool, detail: str = "") -> None:
        _LINES.append(f"[{number:2d}] {'PASS' if passed else 'FAIL'}  {title}" + (f"  ({detail})" if detail else ""))

    return add


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
