import json
import random

import pytest

from immsplit.catalog import (
    GraphFamilySpec,
    census,
    complete_bipartite,
    complete_graph,
    cube,
    cycle,
    fat_edge,
    octahedron,
    petersen,
    wheel,
)
from immsplit.errors import TooLarge
from immsplit.graph import MultiGraph
from immsplit.immersion import (
    ImmersionCertificate,
    find_immersion,
    identity_certificate,
    immersion_oracle_by_splits,
    verify_immersion,
)

from conftest import random_graphs


def _found(g, h):
    cert = find_immersion(g, h)
    if cert is not None:
        assert verify_immersion(g, h, cert)
    return cert is not None


def test_reflexive():
    for g in (complete_graph(5), cube(), octahedron(), fat_edge(3)):
        assert _found(g, g)
        assert verify_immersion(g, g, identity_certificate(g))


def test_octahedron_immerses_k5_but_not_k33():
    assert _found(octahedron(), complete_graph(5))
    assert not _found(octahedron(), complete_bipartite(3, 3))


def test_k6_contains_k33():
    assert _found(complete_graph(6), complete_bipartite(3, 3))


def test_degree_bound_rules_out_k5_in_cube():
    assert not _found(cube(), complete_graph(5))
    assert _found(cube(), complete_graph(4))


def test_petersen_immerses_k4_not_k5():
    assert _found(petersen(), complete_graph(4))
    assert not _found(petersen(), complete_graph(5))


def test_parallel_edges_need_edge_connectivity():
    assert _found(wheel(5), fat_edge(3))
    assert not _found(cycle(6), fat_edge(3))


def test_isolated_target_vertices():
    h = MultiGraph(range(3), [(0, 1)])
    assert _found(complete_graph(3), h)
    assert not _found(complete_graph(2), h)


def test_looped_target_rejected():
    with pytest.raises(ValueError):
        find_immersion(complete_graph(4), MultiGraph.from_edges(1, [(0, 0)]))


def test_certificate_json_round_trip():
    g, h = complete_graph(5), MultiGraph.from_edges(3, [(0, 1), (0, 1), (1, 2)])
    cert = find_immersion(g, h)
    obj = json.loads(json.dumps(cert.to_json(h)))
    assert set(obj["paths"]) == {"0-1", "0-1#1", "1-2"}
    back = ImmersionCertificate.from_json(obj, h)
    assert back == cert
    assert verify_immersion(g, h, back)


def _tamper(cert, **changes):
    return ImmersionCertificate(changes.get("phi", cert.phi), changes.get("paths", cert.paths))


def test_verify_reports_reasons():
    g, h = complete_graph(4), complete_graph(3)
    cert = find_immersion(g, h)
    assert verify_immersion(g, h, cert)
    e0, e1 = sorted(cert.paths)[:2]
    reuse = dict(cert.paths)
    reuse[e1] = reuse[e0]
    assert verify_immersion(g, h, _tamper(cert, paths=reuse)).reason == "EdgeReuse"
    phi = dict(cert.phi)
    phi[1] = phi[0]
    assert verify_immersion(g, h, _tamper(cert, phi=phi)).reason == "PhiNotInjective"
    assert verify_immersion(g, h, _tamper(cert, phi={0: 0})).reason == "PhiDomain"
    short = dict(cert.paths)
    del short[e0]
    assert verify_immersion(g, h, _tamper(cert, paths=short)).reason == "PathSet"
    empty = dict(cert.paths)
    empty[e0] = ()
    assert verify_immersion(g, h, _tamper(cert, paths=empty)).reason == "EmptyPath"
    bogus = dict(cert.paths)
    bogus[e0] = (99,)
    assert verify_immersion(g, h, _tamper(cert, paths=bogus)).reason == "UnknownEdge"


def test_verify_detects_broken_walk():
    g = MultiGraph.from_edges(4, [(0, 1), (2, 3), (1, 2)])
    h = MultiGraph.from_edges(2, [(0, 1)])
    cert = ImmersionCertificate({0: 0, 1: 3}, {0: (0, 1)})
    assert verify_immersion(g, h, cert).reason == "Disconnected"
    cert = ImmersionCertificate({0: 0, 1: 3}, {0: (0, 2)})
    assert verify_immersion(g, h, cert).reason == "WrongEndpoint"


def test_paths_may_pass_through_terminals():
    # Doubled path 0=1=2: the 0-2 edge of a triangle must run through terminal 1.
    g = MultiGraph.from_edges(3, [(0, 1), (0, 1), (1, 2), (1, 2)])
    cert = find_immersion(g, cycle(3))
    assert cert is not None and verify_immersion(g, cycle(3), cert)
    assert sorted(len(p) for p in cert.paths.values()) == [1, 1, 2]
    assert immersion_oracle_by_splits(g, cycle(3))


def test_agrees_with_split_oracle_random():
    rnd = random.Random(3)
    hs = census(GraphFamilySpec(4, 6, "loopless"))
    for g in random_graphs(120, 12, n_max=5, m_max=8, loopless=True):
        for h in rnd.sample(hs, 15):
            assert _found(g, h) == immersion_oracle_by_splits(g, h)


def test_oracle_ignores_loops_in_host():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 2), (0, 2), (1, 1)])
    assert immersion_oracle_by_splits(g, cycle(3))


def test_oracle_guard():
    with pytest.raises(TooLarge):
        immersion_oracle_by_splits(cube(), complete_graph(4))
