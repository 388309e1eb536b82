"""Edge-connectivity: local lambda, global and internal predicates, cut sweeps.

Flow-based routines run on the selected kernel backend; the subset sweep in
``enumerate_cuts_upto`` / ``cut_sizes`` is the independent brute-force
oracle for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import kernels
from .errors import (
    CutEdgeIncident,
    DegreeThree,
    EmptySet,
    NotFound,
    Overlap,
    PreconditionViolated,
    SameVertex,
    TooLarge,
    TooSmall,
    UnknownId,
)
from .graph import MultiGraph, SplitOff, apply

MAX_SWEEP_N = 14


@dataclass(frozen=True)
class Cut:
    side: frozenset
    boundary: frozenset
    size: int

    def is_trivial(self, g: MultiGraph) -> bool:
        return len(self.side) == 1 or g.n - len(self.side) == 1


@dataclass(frozen=True)
class NearlyReport:
    is_nearly: bool
    special: object = None
    k: int = 0
    zero_degree_special: bool = False

    def to_json(self):
        return {"is_nearly": self.is_nearly, "special": self.special, "k": self.k}


def boundary(g: MultiGraph, side: Iterable) -> frozenset:
    x = set(side)
    return frozenset(e for e, (u, v) in g.edges.items() if (u in x) != (v in x))


def cut_size(g: MultiGraph, side: Iterable) -> int:
    """d(X); d(empty set) = 0."""
    x = set(side)
    return sum(1 for u, v in g.edges.values() if (u in x) != (v in x))


def make_cut(g: MultiGraph, side: Iterable) -> Cut:
    side = canonical_side(g, side)
    b = boundary(g, side)
    return Cut(side, b, len(b))


def canonical_side(g: MultiGraph, side: Iterable) -> frozenset:
    """The smaller side; on a tie, the one whose sorted ids come first."""
    x = frozenset(side)
    y = frozenset(g.vertices) - x
    if len(x) != len(y):
        return x if len(x) < len(y) else y
    return x if sorted(x) <= sorted(y) else y


def _check_vertex(g, v):
    if not g.has_vertex(v):
        raise UnknownId(f"unknown vertex {v!r}")


def local_edge_connectivity(g: MultiGraph, x, y, limit: int = -1) -> int:
    """Maximum number of pairwise edge-disjoint x-y paths (capped at ``limit``)."""
    _check_vertex(g, x)
    _check_vertex(g, y)
    if x == y:
        raise SameVertex("lambda needs two distinct vertices")
    idx = g.index
    return kernels.max_flow(g.n, g.adjacency, idx[x], idx[y], limit)


def min_cut_between(g: MultiGraph, x, y) -> Cut:
    """A minimum cut separating x from y; ``side`` holds the x side before canonicalising."""
    _check_vertex(g, x)
    _check_vertex(g, y)
    if x == y:
        raise SameVertex("cut needs two distinct vertices")
    idx = g.index
    _, mask = kernels.source_side(g.n, g.adjacency, idx[x], idx[y])
    side = [v for i, v in enumerate(g.vertices) if (mask >> i) & 1]
    return make_cut(g, side)


def edge_connectivity(g: MultiGraph, limit: int = -1) -> int:
    """Global edge-connectivity; 0 for disconnected graphs.

    With ``limit`` >= 0 the answer is capped there, which makes predicates
    cheaper.
    """
    if g.n < 2:
        raise TooSmall("edge-connectivity needs at least two vertices")
    a = g.adjacency
    best = limit
    for t in range(1, g.n):
        f = kernels.max_flow(g.n, a, 0, t, best)
        if best < 0 or f < best:
            best = f
        if best == 0:
            break
    return best


def global_min_cut(g: MultiGraph) -> Cut:
    if g.n < 2:
        raise TooSmall("edge-connectivity needs at least two vertices")
    best = None
    for t in range(1, g.n):
        f, mask = kernels.source_side(g.n, g.adjacency, 0, t)
        if best is None or f < best[0]:
            best = (f, mask)
    side = [v for i, v in enumerate(g.vertices) if (best[1] >> i) & 1]
    return make_cut(g, side)


def is_k_edge_connected(g: MultiGraph, k: int) -> bool:
    return edge_connectivity(g, limit=k) >= k


def min_nontrivial_cut(g: MultiGraph, floor: int = 0) -> Cut | None:
    """Smallest cut with two or more vertices on each side, or None if n < 4.

    Search stops at the first cut smaller than ``floor``.
    """
    if g.n < 4:
        return None
    value, mask = kernels.min_nontrivial_cut(g.n, g.adjacency, floor)
    side = [v for i, v in enumerate(g.vertices) if (mask >> i) & 1]
    cut = make_cut(g, side)
    assert cut.size == value
    return cut


def is_internally_k_edge_connected(g: MultiGraph, k: int, witness: bool = False):
    """True iff every nontrivial cut has at least k edges.

    With ``witness`` returns ``(flag, cut)`` where ``cut`` is a violating
    nontrivial cut when ``flag`` is False.
    """
    if g.n < 2:
        raise TooSmall("needs at least two vertices")
    cut = min_nontrivial_cut(g, floor=k)
    ok = cut is None or cut.size >= k
    if witness:
        return ok, (None if ok else cut)
    return ok


def is_nearly_k_edge_connected(g: MultiGraph, k: int) -> NearlyReport:
    """k-edge-connected except possibly for one even vertex of degree < k."""
    if g.n < 2:
        raise TooSmall("needs at least two vertices")
    if is_k_edge_connected(g, k):
        return NearlyReport(True, None, k)
    a = g.adjacency
    n = g.n
    for s, v in enumerate(g.vertices):
        d = g.degree(v)
        if d % 2 or d >= k:
            continue
        # Every cut other than delta(v) separates two vertices other than v.
        others = [i for i in range(n) if i != s]
        if len(others) < 2:
            return NearlyReport(True, v, k, d == 0)
        root = others[0]
        if all(kernels.max_flow(n, a, root, t, k) >= k for t in others[1:]):
            return NearlyReport(True, v, k, d == 0)
        # delta(v) < k already, so no other vertex can be special.
        break
    return NearlyReport(False, None, k)


def cut_sizes(g: MultiGraph) -> list[int]:
    """Subset sweep: d(X) for every X containing the first vertex (see kernels)."""
    if g.n > MAX_SWEEP_N:
        raise TooLarge(f"subset sweep capped at {MAX_SWEEP_N} vertices")
    if g.n == 0:
        return []
    return kernels.cut_profile(g.n, g.adjacency)


def _mask_side(g, i):
    verts = g.vertices
    return [verts[0]] + [verts[j + 1] for j in range(g.n - 1) if (i >> j) & 1]


def enumerate_cuts_upto(g: MultiGraph, bound: int) -> list[Cut]:
    """Every cut of size <= bound, one canonical side each, by subset sweep."""
    sizes = cut_sizes(g)
    out = []
    for i, d in enumerate(sizes[:-1]):
        if d <= bound:
            side = canonical_side(g, _mask_side(g, i))
            out.append(Cut(side, boundary(g, side), d))
    out.sort(key=lambda c: (c.size, len(c.side), sorted(c.side)))
    return out


def sweep_min_cuts(g: MultiGraph) -> tuple[int, int | None]:
    """(min cut, min nontrivial cut or None) by brute force over subsets."""
    sizes = cut_sizes(g)
    n = g.n
    best = min(sizes[:-1]) if n >= 2 else None
    best_nt = None
    for i, d in enumerate(sizes[:-1]):
        k = 1 + bin(i).count("1")
        if k >= 2 and n - k >= 2 and (best_nt is None or d < best_nt):
            best_nt = d
    return best, best_nt


# -- counting identities ---------------------------------------------------------


def cross_edges(g: MultiGraph, z1: Iterable, z2: Iterable) -> int:
    """Edges with one end in z1 and the other in z2."""
    a, b = set(z1), set(z2)
    if a & b:
        raise Overlap("sets must be disjoint")
    return sum(
        1 for u, v in g.edges.values() if (u in a and v in b) or (u in b and v in a)
    )


def verify_cut_identities(g: MultiGraph, x: Iterable, y: Iterable) -> bool:
    """Check the crossing-cut identity for (X, Y) and the additive one for two splittings.

    d(X&Y) + d(X|Y) + 2 e(Xc&Y, X&Yc) = d(X) + d(Y), and
    d(Z) = d(Z1) + d(Z2) - 2 e(Z1, Z2) for X = (X&Y) + (X-Y) and X|Y = X + (Y-X).
    """
    x, y = set(x), set(y)
    if not x or not y:
        raise EmptySet("X and Y must be nonempty")
    if x == y:
        raise PreconditionViolated("distinct", "X and Y must differ")
    vs = set(g.vertices)
    if not x <= vs or not y <= vs:
        raise UnknownId("sides must be vertex subsets")
    xc = vs - x
    yc = vs - y
    d = lambda s: cut_size(g, s)  # noqa: E731
    crossing = d(x & y) + d(x | y) + 2 * cross_edges(g, xc & y, x & yc) == d(x) + d(y)

    def additive(z1, z2):
        return d(z1 | z2) == d(z1) + d(z2) - 2 * cross_edges(g, z1, z2)

    return crossing and additive(x & y, x - y) and additive(x, y - x)


# -- splitting off ---------------------------------------------------------------------


def all_pairs_lambda(g: MultiGraph) -> dict:
    n, a = g.n, g.adjacency
    verts = g.vertices
    return {
        (verts[i], verts[j]): kernels.max_flow(n, a, i, j)
        for i, j in combinations(range(n), 2)
    }


def _is_cut_edge_incident(g: MultiGraph, s) -> bool:
    for e in g.incident(s):
        w = g.other_end(e, s)
        if w != s and local_edge_connectivity(g, s, w, limit=2) == 1:
            return True
    return False


def mader_split(g: MultiGraph, s) -> SplitOff:
    """A split at ``s`` preserving lambda between every pair of other vertices.

    Tries incident edge pairs in id order (skipping pairs with the same
    neighbour pair as one already rejected) and checks all pairs exactly.
    """
    _check_vertex(g, s)
    d = g.degree(s)
    if d == 3:
        raise DegreeThree(f"vertex {s!r} has degree 3")
    if d < 2:
        if d == 1:
            raise CutEdgeIncident(f"vertex {s!r} has a pendant edge")
        raise PreconditionViolated("isolated", f"vertex {s!r} has no edges")
    if _is_cut_edge_incident(g, s):
        raise CutEdgeIncident(f"vertex {s!r} is incident with a cut-edge")
    others = [v for v in g.vertices if v != s]
    before = {
        (x, y): local_edge_connectivity(g, x, y) for x, y in combinations(others, 2)
    }
    inc = [e for e in g.incident(s) if g.endpoints(e)[0] != g.endpoints(e)[1]]
    tried = set()
    for e1, e2 in combinations(inc, 2):
        key = tuple(sorted((g.other_end(e1, s), g.other_end(e2, s))))
        if key in tried:
            continue
        tried.add(key)
        op = SplitOff(e1, e2, s)
        h = apply(g, op)
        if all(
            local_edge_connectivity(h, x, y, limit=lam) >= lam
            for (x, y), lam in before.items()
        ):
            return op
    raise NotFound(f"no admissible split at {s!r}; this contradicts Mader's theorem")


def check_mader_split(g: MultiGraph, op: SplitOff) -> bool:
    """Independent recheck: all-pairs lambda away from the pivot is unchanged."""
    h = apply(g, op)
    others = [v for v in g.vertices if v != op.pivot]
    return all(
        local_edge_connectivity(g, x, y) == local_edge_connectivity(h, x, y)
        for x, y in combinations(others, 2)
    )


# -- degree-parity witnesses -------------------------------------------------------


def _parity_preconditions(g: MultiGraph, k: int):
    if g.n < 2:
        raise TooSmall("needs at least two vertices")
    if not is_internally_k_edge_connected(g, k):
        raise PreconditionViolated("internally-k", f"graph is not internally {k}-edge-connected")
    for v in g.vertices:
        d = g.degree(v)
        if d < k and d % 2:
            raise PreconditionViolated(
                "even-low-degree", f"vertex {v!r} has odd degree {d} < {k}"
            )


def high_lambda_partner(g: MultiGraph, x, k: int):
    """For odd-degree ``x``, a vertex y with lambda(x, y) >= k + 1."""
    _check_vertex(g, x)
    _parity_preconditions(g, k)
    if g.degree(x) % 2 == 0:
        raise PreconditionViolated("odd-degree", f"vertex {x!r} has even degree")
    for y in g.vertices:
        if y != x and local_edge_connectivity(g, x, y, limit=k + 1) >= k + 1:
            return y
    raise NotFound(f"no vertex with lambda >= {k + 1} to {x!r}")


def high_lambda_crossing_pair(g: MultiGraph, side: Iterable, k: int) -> tuple:
    """For a (k+1)-cut delta(X), x in X and y outside with lambda(x, y) >= k + 1."""
    x_set = set(side)
    for v in x_set:
        _check_vertex(g, v)
    _parity_preconditions(g, k)
    if not x_set or len(x_set) >= g.n:
        raise PreconditionViolated("proper-side", "side must be nonempty and proper")
    if cut_size(g, x_set) != k + 1:
        raise PreconditionViolated("cut-size", f"d(X) must be {k + 1}")
    rest = [v for v in g.vertices if v not in x_set]
    for x in sorted(x_set):
        for y in rest:
            if local_edge_connectivity(g, x, y, limit=k + 1) >= k + 1:
                return x, y
    raise NotFound(f"no crossing pair with lambda >= {k + 1}")
