import os

from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None,
                          derandomize=os.environ.get("QHEIS_SEED") is None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
