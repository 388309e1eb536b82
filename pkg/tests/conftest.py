import random

import networkx as nx
import pytest

from immsplit.catalog import seeded_random_multigraph
from immsplit.graph import MultiGraph

# Filled by test_acceptance.py; printed once at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def to_nx(g: MultiGraph) -> nx.Graph:
    """Simple weighted graph: edge attribute ``capacity`` is the multiplicity."""
    s = nx.Graph()
    s.add_nodes_from(g.vertices)
    for u, v in g.edges.values():
        if u == v:
            continue
        if s.has_edge(u, v):
            s[u][v]["capacity"] += 1
        else:
            s.add_edge(u, v, capacity=1)
    return s


def to_nx_multi(g: MultiGraph) -> nx.MultiGraph:
    m = nx.MultiGraph()
    m.add_nodes_from(g.vertices)
    m.add_edges_from(g.edges.values())
    return m


def random_graphs(count, seed, n_max=7, m_max=14, loopless=False, n_min=2):
    rnd = random.Random(seed)
    out = []
    for _ in range(count):
        n = rnd.randint(n_min, n_max)
        m = rnd.randint(0, m_max)
        out.append(seeded_random_multigraph(n, m, rnd.getrandbits(64), loopless=loopless))
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)
