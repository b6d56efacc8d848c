import random

import pytest
from hypothesis import strategies as st

from geoclique.graphkit import from_edge_list

_CRITERIA: list[str] = []


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def record(number: int, name: str, passed: bool, detail: str = ""):
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {name}  {detail}".rstrip()
        _CRITERIA.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)


def random_graph(n: int, p: float, rng: random.Random, weights=None):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edge_list(n, edges, weights)


def random_bipartite(n: int, p: float, rng: random.Random, weights=None):
    side = [rng.randrange(2) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if side[u] != side[v] and rng.random() < p]
    return from_edge_list(n, edges, weights), tuple(side)


@st.composite
def graphs(draw, max_n=10, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def bipartite_graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    side = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if side[u] != side[v]]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [e for e, keep in zip(pairs, chosen) if keep]), tuple(side)
