import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, derandomize=True, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA = []


def record_criterion(number, title, ok, seconds, limit):
    _CRITERIA.append((number, title, ok, seconds, limit))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds, limit in sorted(_CRITERIA):
        status = "PASS" if ok else "FAIL"
        budget = f" ({seconds:.2f}s / {limit}s)" if limit else ""
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}{budget}")
