import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for the acceptance summary, then assert."""

    def check(name, ok, detail=""):
        ACCEPTANCE_LINES.append(("PASS" if ok else "FAIL", name, detail))
        assert ok, "%s: %s" % (name, detail)

    return check


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for status, name, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line("[%s] %s  %s" % (status, name, detail))
