import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store ``(criterion, verdict, detail)`` for the acceptance summary."""
    def _record(number: int, title: str, ok: bool, detail: str = ""):
        ACCEPTANCE[number] = (title, ok, detail)
        print(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title} {detail}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title} {detail}".rstrip())
