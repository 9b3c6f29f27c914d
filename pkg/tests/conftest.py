import pytest

_LINES = []


class Criterion:
    """Collects one pass/fail line per acceptance criterion."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.notes = []

    def note(self, text):
        self.notes.append(str(text))

    def line(self, ok):
        extra = f" [{'; '.join(self.notes)}]" if self.notes else ""
        return f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {self.title}{extra}"


@pytest.fixture
def criterion(request):
    made = []

    def make(number, title):
        c = Criterion(number, title)
        made.append(c)
        return c

    yield make
    failed = getattr(request.node, "rep_call", None)
    ok = failed is not None and failed.passed
    for c in made:
        line = c.line(ok)
        _LINES.append((c.number, line))
        print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES):
        terminalreporter.write_line(line)
