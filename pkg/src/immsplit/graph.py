"""Immutable undirected multigraphs and the three reduction operations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    BadIncidence,
    EmptySide,
    OddDegreeCompleteSplit,
    ParseError,
    UnknownId,
)

Edge = tuple  # (u, v) with u <= v


class MultiGraph:
    """Loopless-by-default undirected multigraph with stable edge ids.

    Vertices are sortable hashable ids (ints in practice).  Each edge has an
    integer id; ``edges`` maps id -> ``(u, v)`` with ``u <= v``, and a loop is
    ``(u, u)``.  Instances are never mutated after construction.
    """

    __slots__ = ("_vertices", "_edges", "next_id", "degenerate", "__dict__")

    def __init__(
        self,
        vertices: Iterable = (),
        edges: Mapping[int, tuple] | Iterable[tuple] = (),
        *,
        next_id: int | None = None,
        degenerate: bool = False,
    ):
        vs = set(vertices)
        if isinstance(edges, Mapping):
            items = edges.items()
        else:
            items = enumerate(edges)
        es = {}
        for eid, (u, v) in items:
            if eid in es:
                raise ValueError(f"duplicate edge id {eid}")
            vs.add(u)
            vs.add(v)
            es[eid] = (u, v) if u <= v else (v, u)
        self._vertices = tuple(sorted(vs))
        self._edges = dict(sorted(es.items()))
        top = max(self._edges, default=-1) + 1
        self.next_id = top if next_id is None else max(next_id, top)
        self.degenerate = degenerate

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple]) -> MultiGraph:
        """Vertices ``0..n-1``; edges get ids in the order given."""
        return cls(range(n), list(pairs))

    # -- basic queries ----------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, tuple]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @cached_property
    def _vertex_set(self) -> frozenset:
        return frozenset(self._vertices)

    def has_vertex(self, v) -> bool:
        return v in self._vertex_set

    @cached_property
    def _incidence(self) -> dict:
        inc = {v: [] for v in self._vertices}
        for eid, (u, v) in self._edges.items():
            inc[u].append(eid)
            if v != u:
                inc[v].append(eid)
        return {v: tuple(ids) for v, ids in inc.items()}

    def incident(self, v) -> tuple:
        """Edge ids at ``v`` in increasing order (a loop is listed once)."""
        try:
            return self._incidence[v]
        except KeyError:
            raise UnknownId(f"unknown vertex {v!r}") from None

    def endpoints(self, eid: int) -> tuple:
        try:
            return self._edges[eid]
        except KeyError:
            raise UnknownId(f"unknown edge id {eid!r}") from None

    def other_end(self, eid: int, v):
        u, w = self.endpoints(eid)
        if v == u:
            return w
        if v == w:
            return u
        raise BadIncidence(f"edge {eid} is not incident with {v!r}")

    @cached_property
    def _degrees(self) -> dict:
        deg = dict.fromkeys(self._vertices, 0)
        for u, v in self._edges.values():
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree(self, v) -> int:
        """Degree with loops counted twice."""
        try:
            return self._degrees[v]
        except KeyError:
            raise UnknownId(f"unknown vertex {v!r}") from None

    def degrees(self) -> dict:
        return dict(self._degrees)

    def loops(self) -> list:
        return [eid for eid, (u, v) in self._edges.items() if u == v]

    def multiplicity(self, u, v) -> int:
        key = (u, v) if u <= v else (v, u)
        return self._pair_counts.get(key, 0)

    @cached_property
    def _pair_counts(self) -> dict:
        counts = {}
        for e in self._edges.values():
            counts[e] = counts.get(e, 0) + 1
        return counts

    def neighbors(self, v) -> list:
        return sorted({self.other_end(e, v) for e in self.incident(v)})

    @cached_property
    def index(self) -> dict:
        """Vertex id -> position in ``vertices``."""
        return {v: i for i, v in enumerate(self._vertices)}

    @cached_property
    def adjacency(self) -> list:
        """Flat ``n * n`` multiplicity matrix in ``vertices`` order, loops excluded."""
        n = self.n
        idx = self.index
        a = [0] * (n * n)
        for u, v in self._edges.values():
            if u != v:
                i, j = idx[u], idx[v]
                a[i * n + j] += 1
                a[j * n + i] += 1
        return a

    def is_loopless(self) -> bool:
        return all(u != v for u, v in self._edges.values())

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {self._vertices[0]}
        stack = [self._vertices[0]]
        while stack:
            u = stack.pop()
            for e in self.incident(u):
                w = self.other_end(e, u)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    # -- construction helpers ----------------------------------------------

    def without_edges(self, eids: Iterable[int]) -> MultiGraph:
        drop = set(eids)
        for e in drop:
            self.endpoints(e)
        return MultiGraph(
            self._vertices,
            {e: uv for e, uv in self._edges.items() if e not in drop},
            next_id=self.next_id,
        )

    def without_vertex(self, v) -> MultiGraph:
        self.degree(v)
        return MultiGraph(
            [u for u in self._vertices if u != v],
            {e: uv for e, uv in self._edges.items() if v not in uv},
            next_id=self.next_id,
        )

    def with_edges(self, pairs: Iterable[tuple]) -> MultiGraph:
        """Add edges with fresh ids, in order."""
        es = dict(self._edges)
        nid = self.next_id
        for u, v in pairs:
            es[nid] = (u, v)
            nid += 1
        return MultiGraph(self._vertices, es, next_id=nid)

    def relabeled(self, mapping: Mapping) -> MultiGraph:
        """Rename vertices through ``mapping`` (must be injective); ids kept."""
        return MultiGraph(
            [mapping[v] for v in self._vertices],
            {e: (mapping[u], mapping[v]) for e, (u, v) in self._edges.items()},
            next_id=self.next_id,
            degenerate=self.degenerate,
        )

    def compact(self) -> tuple[MultiGraph, dict, dict]:
        """Renumber vertices to ``0..n-1`` and edges to ``0..m-1``, order kept.

        Returns the new graph plus the vertex and edge renaming maps.
        """
        vmap = {v: i for i, v in enumerate(self._vertices)}
        emap = {e: i for i, e in enumerate(self._edges)}
        g = MultiGraph(
            range(self.n),
            [(vmap[u], vmap[v]) for u, v in self._edges.values()],
            degenerate=self.degenerate,
        )
        return g, vmap, emap

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self):
        es = ", ".join(f"{e}:{u}-{v}" for e, (u, v) in self._edges.items())
        flag = ", degenerate" if self.degenerate else ""
        return f"MultiGraph(V={list(self._vertices)}, E={{{es}}}{flag})"


# -- operations --------------------------------------------------------------


@dataclass(frozen=True)
class DeleteEdge:
    edge: int

    def to_json(self):
        return {"type": "DeleteEdge", "edge": self.edge}


@dataclass(frozen=True)
class SplitOff:
    """Replace ``e1 = xy`` and ``e2 = yz`` by a new edge ``xz`` (y = pivot)."""

    e1: int
    e2: int
    pivot: object

    def to_json(self):
        return {"type": "SplitOff", "e1": self.e1, "e2": self.e2, "pivot": self.pivot}


@dataclass(frozen=True)
class CompleteSplit:
    """Split off every edge at ``vertex`` according to ``pairing``, then drop it.

    ``pairing`` is a tuple of edge-id pairs.  A loop at ``vertex`` has two
    end slots, so its id appears in two different pairs.
    """

    vertex: object
    pairing: tuple

    def to_json(self):
        return {
            "type": "CompleteSplit",
            "vertex": self.vertex,
            "pairing": [list(p) for p in self.pairing],
        }


Operation = DeleteEdge | SplitOff | CompleteSplit


def operation_from_json(obj) -> Operation:
    kind = obj.get("type")
    if kind == "DeleteEdge":
        return DeleteEdge(obj["edge"])
    if kind == "SplitOff":
        return SplitOff(obj["e1"], obj["e2"], obj["pivot"])
    if kind == "CompleteSplit":
        return CompleteSplit(obj["vertex"], tuple(tuple(p) for p in obj["pairing"]))
    raise ValueError(f"unknown operation type {kind!r}")


def _split_far_ends(g: MultiGraph, e1: int, e2: int, pivot) -> tuple:
    if e1 == e2:
        raise BadIncidence("split-off needs two distinct edges")
    x = g.other_end(e1, pivot)
    z = g.other_end(e2, pivot)
    return x, z


def apply(g: MultiGraph, op: Operation) -> MultiGraph:
    """Raw result of ``op`` on ``g``; no loop removal or suppression."""
    if isinstance(op, DeleteEdge):
        g.endpoints(op.edge)
        return g.without_edges([op.edge])
    if isinstance(op, SplitOff):
        if not g.has_vertex(op.pivot):
            raise UnknownId(f"unknown vertex {op.pivot!r}")
        x, z = _split_far_ends(g, op.e1, op.e2, op.pivot)
        return g.without_edges([op.e1, op.e2]).with_edges([(x, z)])
    if isinstance(op, CompleteSplit):
        return _complete_split(g, op.vertex, op.pairing)
    raise TypeError(f"not an operation: {op!r}")


def _complete_split(g: MultiGraph, v, pairing) -> MultiGraph:
    inc = g.incident(v)
    if g.degree(v) % 2:
        raise OddDegreeCompleteSplit(f"vertex {v!r} has odd degree {g.degree(v)}")
    need = {}
    for e in inc:
        need[e] = 2 if g.endpoints(e)[0] == g.endpoints(e)[1] else 1
    used = dict.fromkeys(inc, 0)
    for pair in pairing:
        if len(pair) != 2:
            raise BadIncidence(f"pairing entry {pair!r} is not a pair")
        a, b = pair
        for e in (a, b):
            g.endpoints(e)
            if e not in used:
                raise BadIncidence(f"edge {e} is not incident with {v!r}")
            used[e] += 1
        if a == b:
            raise BadIncidence(f"pairing joins both ends of loop {a}")
    if used != need:
        raise BadIncidence("pairing must cover each incident edge slot exactly once")
    # Slots: non-loop edge e -> one slot (e, 0); loop l -> slots (l, 0), (l, 1).
    # Each pair links two slots; a loop links its own two slots internally.
    # Maximal chains yield one new edge between their far endpoints.
    link = {}
    taken = dict.fromkeys(inc, 0)
    for a, b in pairing:
        sa = (a, taken[a])
        taken[a] += 1
        sb = (b, taken[b])
        taken[b] += 1
        link[sa] = sb
        link[sb] = sa
    new_pairs = []
    seen = set()
    for e in inc:
        if need[e] == 2 or (e, 0) in seen:
            continue
        slot = (e, 0)
        seen.add(slot)
        while True:
            nxt = link[slot]
            seen.add(nxt)
            f = nxt[0]
            if need[f] == 1:
                break
            other = (f, 1 - nxt[1])
            seen.add(other)
            slot = other
        new_pairs.append((g.other_end(e, v), g.other_end(f, v)))
    rest = MultiGraph(
        [u for u in g.vertices if u != v],
        {e: uv for e, uv in g.edges.items() if v not in uv},
        next_id=g.next_id,
    )
    return rest.with_edges(new_pairs)


def normalize(g: MultiGraph) -> MultiGraph:
    """Delete loops and suppress degree-2 vertices until neither remains.

    Suppression always picks the smallest degree-2 vertex.  If the result
    has at most one vertex and no edges, the empty graph is returned with
    ``degenerate`` set.
    """
    vertices = set(g.vertices)
    edges = {e: uv for e, uv in g.edges.items() if uv[0] != uv[1]}
    inc = {v: set() for v in vertices}
    for e, (u, v) in edges.items():
        inc[u].add(e)
        inc[v].add(e)
    nid = g.next_id
    while True:
        cand = [v for v in vertices if len(inc[v]) == 2]
        if not cand:
            break
        v = min(cand)
        e1, e2 = sorted(inc[v])
        a = edges[e1][0] if edges[e1][1] == v else edges[e1][1]
        b = edges[e2][0] if edges[e2][1] == v else edges[e2][1]
        for e in (e1, e2):
            for w in edges.pop(e):
                inc[w].discard(e)
        vertices.discard(v)
        del inc[v]
        if a != b:
            edges[nid] = (a, b) if a <= b else (b, a)
            inc[a].add(nid)
            inc[b].add(nid)
        nid += 1
    if len(vertices) <= 1 and not edges:
        return MultiGraph((), (), next_id=nid, degenerate=True)
    return MultiGraph(vertices, edges, next_id=nid)


def is_normalized(g: MultiGraph) -> bool:
    return g.is_loopless() and all(d != 2 for d in g.degrees().values())


def identify(g: MultiGraph, side: Iterable, new_vertex=None) -> MultiGraph:
    """Contract ``side`` to one new vertex; edges inside it are discarded."""
    x = set(side)
    for v in x:
        g.degree(v)
    if not x or len(x) >= g.n:
        raise EmptySide("side must be nonempty and proper")
    if new_vertex is None:
        new_vertex = max(g.vertices) + 1
    elif g.has_vertex(new_vertex) and new_vertex not in x:
        raise BadIncidence(f"vertex {new_vertex!r} already exists outside the side")
    es = {}
    for e, (u, v) in g.edges.items():
        iu, iv = u in x, v in x
        if iu and iv:
            continue
        es[e] = (new_vertex if iu else u, new_vertex if iv else v)
    verts = [v for v in g.vertices if v not in x] + [new_vertex]
    return MultiGraph(verts, es, next_id=g.next_id)


# -- MGR text format ------------------------------------------------------------


def to_mgr(g: MultiGraph) -> str:
    """``n m`` header then one ``u v`` line per edge in edge-id order.

    Vertices are written as their rank in sorted order, so the text is
    identical for graphs equal up to an order-preserving renaming.
    """
    idx = g.index
    lines = [f"{g.n} {g.m}"]
    for u, v in g.edges.values():
        lines.append(f"{idx[u]} {idx[v]}")
    return "\n".join(lines) + "\n"


def _mgr_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_mgr(text: str) -> MultiGraph:
    lines = list(_mgr_lines(text))
    if not lines:
        raise ParseError(1, "missing header")
    no, head = lines[0]
    try:
        n, m = (int(t) for t in head.split())
    except ValueError:
        raise ParseError(no, f"bad header {head!r}") from None
    if n < 0 or m < 0:
        raise ParseError(no, "negative size")
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else no + 1)
        raise ParseError(where, f"expected {m} edge lines, found {len(body)}")
    pairs = []
    for no, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(no, f"non-integer endpoint in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(no, f"endpoint out of range 0..{n - 1}")
        pairs.append((u, v))
    return MultiGraph.from_edges(n, pairs)


def parse_mgr_blocks(text: str) -> list[MultiGraph]:
    """Parse several MGR graphs separated by blank lines."""
    graphs, block = [], []
    for raw in text.splitlines() + [""]:
        if raw.strip():
            block.append(raw)
        elif block:
            graphs.append(parse_mgr("\n".join(block)))
            block = []
    return graphs
