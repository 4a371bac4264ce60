import itertools

import numpy as np
import pytest

from nibblecolor.engine import ColoringState
from nibblecolor.graph import Graph


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def brute_force_triangle_free(g):
    adj = {tuple(e) for e in g.edges.tolist()}
    for a, b, c in itertools.combinations(range(g.n), 3):
        if (a, b) in adj and (a, c) in adj and (b, c) in adj:
            return False
    return True


def make_state(g, num_colors, color, palettes):
    """A ColoringState with explicit colors and palettes and exact counters."""
    st = ColoringState(g, num_colors)
    st.color = np.asarray(color, dtype=np.int64).copy()
    st.palette = np.zeros((g.n, num_colors), dtype=bool)
    for u, pal in enumerate(palettes):
        if st.color[u] < 0:
            st.palette[u, sorted(pal)] = True
    st.dcount, st.uncolored_degree = st.recount()
    return st


@pytest.fixture
def petersen_graph():
    return petersen()


def random_reachable_state(g, num_colors, rs, colored_frac=0.2, keep=0.7):
    """Random state a run could reach: colored vertices properly colored and
    their colors absent from neighboring palettes."""
    color = np.full(g.n, -1)
    for u in np.flatnonzero(rs.random(g.n) < colored_frac):
        used = set(color[g.neighbors(u)].tolist())
        free = [c for c in range(num_colors) if c not in used]
        if free:
            color[u] = free[rs.integers(len(free))]
    pals = []
    for u in range(g.n):
        blocked = set(color[g.neighbors(u)].tolist())
        pals.append({c for c in np.flatnonzero(rs.random(num_colors) < keep).tolist()
                     if c not in blocked})
    return make_state(g, num_colors, color, pals)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
