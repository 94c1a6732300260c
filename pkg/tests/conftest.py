from __future__ import annotations

import pytest

from zdg.graph import LoopGraph


@pytest.fixture
def p4() -> LoopGraph:
    return LoopGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)], labels=["a", "b", "c", "d"])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import _LINES

    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
