import hashlib
import json
from itertools import combinations, combinations_with_replacement
from pathlib import Path

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import numerical_edge_match

from immsplit import connectivity as conn
from immsplit.catalog import (
    GraphFamilySpec,
    Xoshiro256,
    census,
    enumerate_graphs,
    named_graph,
    seeded_random_multigraph,
)
from immsplit.errors import TooLarge, UnknownName
from immsplit.graph import MultiGraph, to_mgr
from immsplit.iso import is_isomorphic

from conftest import to_nx

PINS = json.loads((Path(__file__).parent / "data" / "census_pins.json").read_text())["pins"]


@pytest.mark.parametrize(
    "name, n, m, degrees",
    [
        ("Q3", 8, 12, {3}),
        ("octahedron", 6, 12, {4}),
        ("K222", 6, 12, {4}),
        ("K2^3", 2, 3, {3}),
        ("K2^5", 2, 5, {5}),
        ("K5", 5, 10, {4}),
        ("K33", 6, 9, {3}),
        ("petersen", 10, 15, {3}),
        ("C7", 7, 7, {2}),
        ("C_n(7)", 7, 7, {2}),
        ("W6", 6, 10, {3, 5}),
        ("K7", 7, 21, {6}),
    ],
)
def test_named_graphs(name, n, m, degrees):
    g = named_graph(name)
    assert (g.n, g.m) == (n, m)
    assert set(g.degrees().values()) == degrees


def test_named_graph_classes():
    q3 = named_graph("Q3")
    assert conn.is_k_edge_connected(q3, 3)
    assert conn.is_internally_k_edge_connected(q3, 4)
    assert conn.is_k_edge_connected(named_graph("octahedron"), 4)
    assert nx.is_isomorphic(to_nx(named_graph("Q3")), nx.hypercube_graph(3))
    assert nx.is_isomorphic(to_nx(named_graph("petersen")), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(named_graph("octahedron")), nx.octahedral_graph())


def test_unknown_name():
    with pytest.raises(UnknownName):
        named_graph("dodecahedron")
    with pytest.raises(UnknownName):
        named_graph("W3")


def _brute_classes(n, m_max, keep):
    """Isomorphism classes of loopless multigraphs by networkx, no shortcuts."""
    reps = []
    pairs = list(combinations(range(n), 2))
    for m in range(m_max + 1):
        for chosen in combinations_with_replacement(pairs, m) if pairs else [()]:
            if m and not pairs:
                continue
            g = MultiGraph.from_edges(n, chosen)
            if not keep(g):
                continue
            s = to_nx(g)
            if not any(
                nx.is_isomorphic(s, r, edge_match=numerical_edge_match("capacity", 0)) for r in reps
            ):
                reps.append(s)
        if not pairs:
            break
    return len(reps)


def test_connected_small_hand_count():
    # K1, K2, K2^2, K2^3, P3, P3 with a doubled edge, triangle.
    gs = census(GraphFamilySpec(3, 3, "connected"))
    assert len(gs) == 7
    shapes = sorted((g.n, g.m) for g in gs)
    assert shapes == [(1, 0), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 3)]


@pytest.mark.parametrize(
    "predicate, k, n_max, m_max",
    [
        ("connected", 0, 4, 6),
        ("loopless", 0, 4, 5),
        ("kec", 3, 4, 8),
        ("3ec-i4ec", 0, 5, 8),
    ],
)
def test_counts_match_brute_force(predicate, k, n_max, m_max):
    spec = GraphFamilySpec(n_max, m_max, predicate, k=k, n_min=2)

    def keep(g):
        if predicate == "loopless":
            return True
        if not g.is_connected():
            return False
        if predicate == "connected":
            return True
        best, best_nt = conn.sweep_min_cuts(g)
        if predicate == "kec":
            return best >= k
        return best >= 3 and (best_nt is None or best_nt >= 4)

    want = sum(_brute_classes(n, m_max, keep) for n in range(2, n_max + 1))
    assert len(census(spec)) == want


def test_kec_two_vertices():
    gs = census(GraphFamilySpec(2, 5, "kec", k=4))
    assert [g.m for g in gs] == [4, 5]


def test_census_is_duplicate_free():
    gs = census(GraphFamilySpec(5, 7, "connected"))
    for g, h in combinations(gs, 2):
        if (g.n, g.m) == (h.n, h.m):
            assert not is_isomorphic(g, h)


def test_census_members_satisfy_predicate():
    for g in census(GraphFamilySpec(6, 12, "3ec-i4ec", n_min=2)):
        best, best_nt = conn.sweep_min_cuts(g)
        assert best >= 3 and (best_nt is None or best_nt >= 4)


@pytest.mark.parametrize("pin", PINS, ids=lambda p: "-".join(str(v) for v in p["spec"].values()))
def test_census_regression_pins(pin):
    gs = census(GraphFamilySpec(**pin["spec"]))
    assert len(gs) == pin["count"]
    digest = hashlib.sha256("\n".join(to_mgr(g) for g in gs).encode()).hexdigest()
    assert digest == pin["sha256"]


def test_enumeration_guards(monkeypatch):
    with pytest.raises(TooLarge):
        list(enumerate_graphs(GraphFamilySpec(9, 10)))
    with pytest.raises(TooLarge):
        list(enumerate_graphs(GraphFamilySpec(4, 17)))
    monkeypatch.setenv("IMM_SPLIT_MAX_N", "9")
    GraphFamilySpec(9, 10).check()
    with pytest.raises(ValueError):
        GraphFamilySpec(3, 3, "planar").check()


def test_xoshiro_reference_outputs():
    # First outputs of the reference C xoshiro256** seeded through splitmix64.
    want = {
        0: [11091344671253066420, 13793997310169335082, 1900383378846508768, 7684712102626143532],
        42: [1546998764402558742, 6990951692964543102, 12544586762248559009, 17057574109182124193],
    }
    for seed, outs in want.items():
        r = Xoshiro256(seed)
        assert [r.next64() for _ in range(4)] == outs


def test_random_multigraph_deterministic():
    a = to_mgr(seeded_random_multigraph(5, 8, 42))
    assert a == to_mgr(seeded_random_multigraph(5, 8, 42))
    assert a != to_mgr(seeded_random_multigraph(5, 8, 43))
    assert seeded_random_multigraph(1, 0, 7).n == 1


def test_random_multigraph_handshake_and_loopless():
    for seed in range(1000):
        g = seeded_random_multigraph(6, 9, seed, loopless=seed % 2 == 0)
        assert sum(g.degrees().values()) == 2 * g.m == 18
        if seed % 2 == 0:
            assert g.is_loopless()


def test_random_multigraph_bad_args():
    with pytest.raises(ValueError):
        seeded_random_multigraph(0, 1, 1)
    with pytest.raises(ValueError):
        seeded_random_multigraph(1, 1, 1, loopless=True)
