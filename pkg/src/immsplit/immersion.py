"""Weak immersion: certificates, verification and exhaustive search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .errors import TooLarge
from .graph import MultiGraph, SplitOff, apply
from .iso import canonical_form


@dataclass(frozen=True)
class ImmersionCertificate:
    """Terminal map ``phi`` (H vertex -> G vertex) and, per H edge id, a trail
    in G given as a list of G edge ids."""

    phi: dict
    paths: dict = field(default_factory=dict)

    def to_json(self, h: MultiGraph) -> dict:
        """``{"phi": {...}, "paths": {"u-v": [...]}}``.

        Parallel H edges share a pair; the second and later ones get keys
        ``"u-v#1"``, ``"u-v#2"`` in edge-id order.
        """
        seen = {}
        paths = {}
        for eid in sorted(self.paths):
            u, v = h.endpoints(eid)
            base = f"{u}-{v}"
            k = seen.get(base, 0)
            seen[base] = k + 1
            paths[base if k == 0 else f"{base}#{k}"] = list(self.paths[eid])
        return {"phi": {str(k): v for k, v in sorted(self.phi.items())}, "paths": paths}

    @classmethod
    def from_json(cls, obj: dict, h: MultiGraph) -> ImmersionCertificate:
        phi = {int(k): v for k, v in obj["phi"].items()}
        by_key = {}
        counts = {}
        for eid, (u, v) in h.edges.items():
            base = f"{u}-{v}"
            k = counts.get(base, 0)
            counts[base] = k + 1
            by_key[base if k == 0 else f"{base}#{k}"] = eid
        paths = {}
        for key, ids in obj["paths"].items():
            if key not in by_key:
                raise ValueError(f"certificate path {key!r} names no edge of H")
            paths[by_key[key]] = tuple(ids)
        return cls(phi, paths)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def verify_immersion(g: MultiGraph, h: MultiGraph, cert: ImmersionCertificate) -> Verdict:
    """Check a certificate against G and H without any search."""
    phi = cert.phi
    if set(phi) != set(h.vertices):
        return Verdict(False, "PhiDomain")
    if any(not g.has_vertex(x) for x in phi.values()):
        return Verdict(False, "PhiRange")
    if len(set(phi.values())) != len(phi):
        return Verdict(False, "PhiNotInjective")
    if set(cert.paths) != set(h.edges):
        return Verdict(False, "PathSet")
    used = set()
    for eid, path in cert.paths.items():
        u, v = h.endpoints(eid)
        if not path:
            return Verdict(False, "EmptyPath")
        at = phi[u]
        for ge in path:
            if ge not in g.edges:
                return Verdict(False, "UnknownEdge")
            if ge in used:
                return Verdict(False, "EdgeReuse")
            used.add(ge)
            a, b = g.endpoints(ge)
            if at == a:
                at = b
            elif at == b:
                at = a
            else:
                return Verdict(False, "Disconnected")
        if at != phi[v]:
            return Verdict(False, "WrongEndpoint")
    return Verdict(True)


def identity_certificate(g: MultiGraph) -> ImmersionCertificate:
    return ImmersionCertificate({v: v for v in g.vertices}, {e: (e,) for e in g.edges})


# -- search -----------------------------------------------------------------------------


def _twin_rank(h: MultiGraph, order: list) -> list:
    """For each position, the previous position holding a twin (or -1)."""
    prev = []
    for i, v in enumerate(order):
        p = -1
        for j in range(i - 1, -1, -1):
            w = order[j]
            if h.multiplicity(v, v) == h.multiplicity(w, w) and all(
                h.multiplicity(v, x) == h.multiplicity(w, x)
                for x in h.vertices
                if x != v and x != w
            ):
                p = j
                break
        prev.append(p)
    return prev


def _phi_candidates(g: MultiGraph, h: MultiGraph, lam: dict):
    """Injective terminal maps, high degree first, one per swap of twin H vertices."""
    hdeg = h.degrees()
    gdeg = g.degrees()
    horder = sorted(h.vertices, key=lambda v: (-hdeg[v], v))
    gorder = sorted(g.vertices, key=lambda v: (-gdeg[v], v))
    grank = {v: i for i, v in enumerate(gorder)}
    twin_prev = _twin_rank(h, horder)
    demand = {}
    for u, v in h.edges.values():
        demand[(u, v)] = demand.get((u, v), 0) + 1
        if u != v:
            demand[(v, u)] = demand[(u, v)]
    k = len(horder)
    phi = [None] * k
    used = set()

    def rec(i):
        if i == k:
            yield dict(zip(horder, phi))
            return
        v = horder[i]
        low = grank[phi[twin_prev[i]]] + 1 if twin_prev[i] >= 0 else 0
        for x in gorder[low:]:
            if x in used or gdeg[x] < hdeg[v]:
                continue
            ok = True
            for j in range(i):
                c = demand.get((v, horder[j]), 0)
                if c and lam[frozenset((x, phi[j]))] < c:
                    ok = False
                    break
            if not ok:
                continue
            phi[i] = x
            used.add(x)
            yield from rec(i + 1)
            used.discard(x)
        phi[i] = None

    yield from rec(0)


def _units(h: MultiGraph, phi: dict, g: MultiGraph):
    """Demand units in routing order plus the H edge ids for each pair group."""
    groups = {}
    for eid, (u, v) in h.edges.items():
        a, b = g.index[phi[u]], g.index[phi[v]]
        key = (a, b) if a < b else (b, a)
        groups.setdefault(key, []).append(eid)
    keys = sorted(groups, key=lambda p: (-len(groups[p]), p))
    units = [k for k in keys for _ in groups[k]]
    return units, [groups[k] for k in keys]


def _to_edge_ids(g: MultiGraph, vpaths) -> list:
    pool = {}
    for eid, (u, v) in g.edges.items():
        if u != v:
            pool.setdefault((u, v), deque()).append(eid)
    verts = g.vertices
    out = []
    for path in vpaths:
        ids = []
        for i, j in zip(path, path[1:]):
            x, y = verts[i], verts[j]
            ids.append(pool[(x, y) if x <= y else (y, x)].popleft())
        out.append(tuple(ids))
    return out


def find_immersion(g: MultiGraph, h: MultiGraph) -> ImmersionCertificate | None:
    """A certificate that G weakly immerses H, or None if there is none.

    H must be loopless.  Terminal maps are tried high-degree-first with
    pairwise lambda pruning; each map is handed to the routing kernel, which
    backtracks over vertex-simple paths (any trail shortcuts to one).
    """
    if not h.is_loopless():
        raise ValueError("H must be loopless")
    if h.n > g.n:
        return None
    g_links = sum(1 for u, v in g.edges.values() if u != v)
    if h.m > g_links:
        return None
    if h.m == 0:
        return ImmersionCertificate(dict(zip(h.vertices, g.vertices)), {})
    n, a = g.n, g.adjacency
    idx = g.index
    lam = {}
    for x, y in combinations(g.vertices, 2):
        lam[frozenset((x, y))] = kernels.max_flow(n, a, idx[x], idx[y])
    for phi in _phi_candidates(g, h, lam):
        units, groups = _units(h, phi, g)
        vpaths = kernels.route(n, a, units)
        if vpaths is None:
            continue
        eids = [e for grp in groups for e in grp]
        start = [idx[phi[h.endpoints(e)[0]]] for e in eids]
        vpaths = [p if p[0] == s else p[::-1] for p, s in zip(vpaths, start)]
        paths = dict(zip(eids, _to_edge_ids(g, vpaths)))
        return ImmersionCertificate(dict(phi), paths)
    return None


def immerses(g: MultiGraph, h: MultiGraph) -> bool:
    return find_immersion(g, h) is not None


# -- definitional oracle ---------------------------------------------------------------

ORACLE_MAX_N = 6
ORACLE_MAX_M = 10
_reach_cache: dict = {}


def _successors(g: MultiGraph):
    for e in g.edges:
        yield g.without_edges([e])
    for v in g.vertices:
        if g.degree(v) == 0:
            yield g.without_vertex(v)
    for v in g.vertices:
        inc = [e for e in g.incident(v) if g.endpoints(e)[0] != g.endpoints(e)[1]]
        for e1, e2 in combinations(inc, 2):
            s = apply(g, SplitOff(e1, e2, v))
            yield s.without_edges(s.loops())


def _reachable(g: MultiGraph) -> frozenset:
    """Canonical forms of every graph reachable by deletions and split-offs."""
    key = canonical_form(g)
    hit = _reach_cache.get(key)
    if hit is not None:
        return hit
    out = {key}
    for s in _successors(g):
        out |= _reachable(s)
    res = frozenset(out)
    _reach_cache[key] = res
    return res


def immersion_oracle_by_splits(g: MultiGraph, h: MultiGraph) -> bool:
    """Decide immersion from the definition: delete edges and isolated
    vertices, split off pairs, and look for H up to isomorphism.

    Loops are discarded as soon as they appear, so H must be loopless.
    Memoised across calls on canonical forms; exponential, hence guarded.
    """
    if g.n > ORACLE_MAX_N or g.m > ORACLE_MAX_M:
        raise TooLarge(f"oracle limited to n <= {ORACLE_MAX_N}, m <= {ORACLE_MAX_M}")
    if not h.is_loopless():
        raise ValueError("H must be loopless")
    g = g.without_edges(g.loops())
    return canonical_form(h) in _reachable(g)
