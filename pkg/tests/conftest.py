import functools
import time
from collections import defaultdict

import pytest

from slp.benchmarks import benchmark
from slp.driver import solve_problem

SOLVE_SECONDS = {}


@functools.lru_cache(maxsize=None)
def cached_solve(name, param, N, M):
    """(lambdas, mu) of a benchmark, memoized across the session."""
    start = time.perf_counter()
    _, report = solve_problem(benchmark(name, param), N, M)
    SOLVE_SECONDS[name, param, N, M] = time.perf_counter() - start
    return report.lambdas.copy(), report.mu.copy()


@pytest.fixture(scope="session")
def solved():
    return cached_solve


class AcceptanceLog:
    """Per-criterion outcomes, summarized once at the end of the run."""

    def __init__(self):
        self.titles = {}
        self.checks = defaultdict(list)

    def record(self, criterion, title, ok, detail):
        self.titles[criterion] = title
        self.checks[criterion].append((bool(ok), detail))
        return bool(ok)

    def lines(self):
        for criterion in sorted(self.titles):
            checks = self.checks[criterion]
            failed = [detail for ok, detail in checks if not ok]
            status = "FAIL" if failed else "PASS"
            summary = f"{len(checks) - len(failed)}/{len(checks)} checks"
            if failed:
                summary += "; failing: " + " | ".join(failed)
            yield f"criterion {criterion} {status}: {self.titles[criterion]} ({summary})"


_ACCEPTANCE = AcceptanceLog()


@pytest.fixture(scope="session")
def acceptance():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    lines = list(_ACCEPTANCE.lines())
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
