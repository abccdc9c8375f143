from __future__ import annotations

import re

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion at the end of a run."""
    results: dict[int, bool] = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            m = re.search(r"test_criterion_(\d+)", nodeid)
            if m and getattr(rep, "when", "call") in ("call", "setup"):
                n = int(m.group(1))
                ok = outcome == "passed"
                results[n] = results.get(n, True) and ok
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            verdict = "PASS" if results[n] else "FAIL"
            terminalreporter.write_line(f"ACCEPTANCE {n:02d}: {verdict}")
