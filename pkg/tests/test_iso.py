import random

import networkx as nx
from networkx.algorithms.isomorphism import numerical_edge_match

from immsplit.catalog import complete_graph, cube, octahedron, petersen, seeded_random_multigraph
from immsplit.graph import MultiGraph
from immsplit.iso import automorphisms, canonical_form, canonical_graph, is_isomorphic

from conftest import random_graphs, to_nx


def _nx_iso(g, h):
    def weighted(x):
        w = to_nx(x)
        for v in x.vertices:
            w.nodes[v]["loops"] = sum(1 for a, b in x.edges.values() if a == b == v)
        return w

    return nx.is_isomorphic(
        weighted(g), weighted(h),
        node_match=lambda a, b: a["loops"] == b["loops"],
        edge_match=numerical_edge_match("capacity", 0),
    )


def _shuffled(g, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    mapping = dict(zip(g.vertices, perm))
    pairs = [(mapping[u], mapping[v]) for u, v in g.edges.values()]
    rnd.shuffle(pairs)
    return MultiGraph.from_edges(g.n, pairs)


def test_relabelled_copies_share_canonical_form():
    rnd = random.Random(1)
    for g in random_graphs(300, 2, n_max=8, m_max=14):
        h = _shuffled(g, rnd)
        assert canonical_form(g) == canonical_form(h)
        iso = is_isomorphic(g, h, witness=True)
        assert iso is not None
        assert sorted(tuple(sorted((iso[u], iso[v]))) for u, v in g.edges.values()) == sorted(
            h.edges.values()
        )


def test_agrees_with_networkx_on_random_pairs():
    rnd = random.Random(3)
    same = 0
    for _ in range(1500):
        n = rnd.randint(1, 6)
        m = rnd.randint(0, 8)
        g = seeded_random_multigraph(n, m, rnd.getrandbits(32))
        h = seeded_random_multigraph(n, m, rnd.getrandbits(32))
        want = _nx_iso(g, h)
        same += want
        assert is_isomorphic(g, h) == want
        assert (canonical_form(g) == canonical_form(h)) == want
    assert same > 50


def test_canonical_graph_is_fixed_point():
    for g in random_graphs(100, 4, n_max=7, m_max=12):
        c = canonical_graph(g)
        assert canonical_graph(c) == c


def test_automorphism_group_orders():
    assert len(automorphisms(complete_graph(4))) == 24
    assert len(automorphisms(cube())) == 48
    assert len(automorphisms(octahedron())) == 48
    assert len(automorphisms(petersen())) == 120
