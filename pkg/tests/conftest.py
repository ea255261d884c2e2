import sys
import numpy as np
import pytest

from busfactor import BipartiteGraph


def make_graph(edges, people=(), tasks=()):
    return BipartiteGraph(people, tasks, edges)


def gstar():
    return make_graph([("p1", "t1"), ("p1", "t2"), ("p2", "t2"), ("p2", "t3")])


def star_dyad():
    return make_graph([("p1", f"t{j}") for j in range(1, 6)] + [("p2", "t6")])


def complete(n, m):
    return make_graph([(f"p{i}", f"t{j}") for i in range(1, n + 1) for j in range(1, m + 1)])


def dyads(n):
    return make_graph([(f"p{i}", f"t{i}") for i in range(1, n + 1)])


def random_graph(rng, max_people=12, max_tasks=12, min_people=1, min_tasks=1, density=None):
    """Small random bipartite graph; isolated nodes allowed."""
    n = int(rng.integers(min_people, max_people + 1))
    m = int(rng.integers(min_tasks, max_tasks + 1))
    p = float(rng.uniform(0.05, 0.6)) if density is None else density
    mask = rng.random((n, m)) < p
    people = [f"p{i:02d}" for i in range(n)]
    tasks = [f"t{j:02d}" for j in range(m)]
    edges = [(people[i], tasks[j]) for i in range(n) for j in range(m) if mask[i, j]]
    return BipartiteGraph(people, tasks, edges)


@pytest.fixture
def g_star():
    return gstar()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
