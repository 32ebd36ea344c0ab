import pytest

ACCEPTANCE = {}


@pytest.fixture
def record(request):
    """Register the criterion number of an acceptance test for the terminal summary."""
    def _record(number: int, detail: str = ""):
        ACCEPTANCE[request.node.nodeid] = (number, detail)
    return _record


def pytest_runtest_logreport(report):
    if report.when == "call" and report.nodeid in ACCEPTANCE:
        number, detail = ACCEPTANCE[report.nodeid]
        ACCEPTANCE[report.nodeid] = (number, detail, report.passed)


def pytest_terminal_summary(terminalreporter):
    rows = sorted(v for v in ACCEPTANCE.values() if len(v) == 3)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, detail, passed in rows:
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
