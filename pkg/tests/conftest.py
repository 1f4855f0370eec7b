import itertools
import sys

import numpy as np
import pytest

from netsubset.grid import Params


@pytest.fixture
def rng():
    return np.random.default_rng(20260418)


def brute_force_containment(params: Params, patterns) -> float:
    """P(some pattern fully occupied) by enumerating all K**N cell assignments."""
    K = params.cells
    targets = [frozenset(p.flat_indices()) for p in patterns]
    hits = 0
    for assignment in itertools.product(range(K), repeat=params.N):
        occupied = set(assignment)
        if any(t <= occupied for t in targets):
            hits += 1
    return hits / K**params.N


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
