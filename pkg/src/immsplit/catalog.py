"""Named graphs, isomorph-free enumeration and a portable seeded generator."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .connectivity import (
    edge_connectivity,
    is_internally_k_edge_connected,
    is_k_edge_connected,
)
from .errors import TooLarge, UnknownName
from .graph import MultiGraph
from .iso import canonical_form, canonical_graph

# -- named graphs -----------------------------------------------------------------


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return MultiGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle(n: int) -> MultiGraph:
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    if n == 1:
        return MultiGraph.from_edges(1, [(0, 0)])
    return MultiGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def wheel(n: int) -> MultiGraph:
    """Hub 0 joined to every vertex of an (n-1)-cycle on 1..n-1."""
    if n < 4:
        raise ValueError("wheel needs n >= 4")
    rim = n - 1
    pairs = [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    pairs += [(0, 1 + i) for i in range(rim)]
    return MultiGraph.from_edges(n, pairs)


def fat_edge(k: int) -> MultiGraph:
    """Two vertices joined by k parallel edges."""
    return MultiGraph.from_edges(2, [(0, 1)] * k)


def cube() -> MultiGraph:
    return MultiGraph.from_edges(
        8, [(i, i ^ (1 << b)) for i in range(8) for b in range(3) if i < i ^ (1 << b)]
    )


def octahedron() -> MultiGraph:
    """K_{2,2,2}: antipodal pairs {0,1}, {2,3}, {4,5} are the non-edges."""
    return MultiGraph.from_edges(
        6, [(i, j) for i, j in combinations(range(6), 2) if i // 2 != j // 2]
    )


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph.from_edges(10, outer + spokes + inner)


_FIXED = {
    "K4": lambda: complete_graph(4),
    "K5": lambda: complete_graph(5),
    "K6": lambda: complete_graph(6),
    "K33": lambda: complete_bipartite(3, 3),
    "Q3": cube,
    "K2^3": lambda: fat_edge(3),
    "K2^4": lambda: fat_edge(4),
    "K2^5": lambda: fat_edge(5),
    "octahedron": octahedron,
    "K222": octahedron,
    "petersen": petersen,
}


def named_graph(name: str) -> MultiGraph:
    """Look up a named graph: K4, K5, K6, K33, Q3, K2^3/4/5, C<n>, W<n>,
    octahedron (alias K222), petersen.  ``C_n(7)`` style is accepted too."""
    key = name.strip()
    if key in _FIXED:
        return _FIXED[key]()
    lowered = {k.lower(): f for k, f in _FIXED.items()}
    if key.lower() in lowered:
        return lowered[key.lower()]()
    m = re.fullmatch(r"([CW])(?:_?n?\(?)(\d+)\)?", key)
    if m:
        n = int(m.group(2))
        try:
            return cycle(n) if m.group(1) == "C" else wheel(n)
        except ValueError as exc:
            raise UnknownName(str(exc)) from None
    m = re.fullmatch(r"K(\d+)", key)
    if m:
        return complete_graph(int(m.group(1)))
    raise UnknownName(f"unknown graph name {name!r}")


NAMED = tuple(_FIXED) + ("C<n>", "W<n>", "K<n>")


# -- seeded generator --------------------------------------------------------------

_MASK = (1 << 64) - 1


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256:
    """xoshiro256** 1.0, seeded through splitmix64 from a 64-bit integer."""

    def __init__(self, seed: int):
        x = seed & _MASK
        s = []
        for _ in range(4):
            x = (x + 0x9E3779B97F4A7C15) & _MASK
            z = x
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
            s.append(z ^ (z >> 31))
        self.s = s

    def next64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, n: int) -> int:
        """Integer in [0, n) by multiply-shift on a 64-bit draw."""
        return (self.next64() * n) >> 64

    def sample(self, items, k):
        pool = list(items)
        out = []
        for _ in range(k):
            out.append(pool.pop(self.below(len(pool))))
        return out


def seeded_random_multigraph(n: int, m: int, seed: int, loopless: bool = False) -> MultiGraph:
    """n vertices, m edges with independent uniform endpoints.

    With ``loopless`` the second endpoint is drawn from the other n - 1
    vertices instead.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if loopless and n < 2 and m > 0:
        raise ValueError("a loopless graph with edges needs n >= 2")
    rng = Xoshiro256(seed)
    pairs = []
    for _ in range(m):
        u = rng.below(n)
        if loopless:
            v = rng.below(n - 1)
            v += v >= u
        else:
            v = rng.below(n)
        pairs.append((u, v))
    return MultiGraph.from_edges(n, pairs)


# -- enumeration ------------------------------------------------------------------

PREDICATES = ("loopless", "connected", "kec", "ikec", "3ec-i4ec")
EXHAUSTIVE_N_MAX = 8
EXHAUSTIVE_M_MAX = 16


@dataclass(frozen=True)
class GraphFamilySpec:
    """Bounds and class filter for exhaustive enumeration.

    Predicates: ``loopless`` (all loopless multigraphs), ``connected``,
    ``kec`` (k-edge-connected), ``ikec`` (connected and internally
    k-edge-connected), ``3ec-i4ec``.  Every family is loopless.
    """

    n_max: int
    m_max: int
    predicate: str = "connected"
    k: int = 0
    n_min: int = 1
    m_min: int = 0
    seed: int = 0

    def check(self):
        if self.predicate not in PREDICATES:
            raise ValueError(f"unknown predicate {self.predicate!r}")
        n_cap = int(os.environ.get("IMM_SPLIT_MAX_N", EXHAUSTIVE_N_MAX))
        if self.n_max > n_cap or self.m_max > EXHAUSTIVE_M_MAX:
            raise TooLarge(
                f"exhaustive enumeration capped at n <= {n_cap}, m <= {EXHAUSTIVE_M_MAX}"
            )


def _min_degree(spec: GraphFamilySpec, n: int) -> int:
    if n == 1:
        return 0
    p = spec.predicate
    if p == "loopless":
        return 0
    if p == "connected" or p == "ikec":
        return 1
    if p == "kec":
        return spec.k
    return 3


def _pair_cap(spec: GraphFamilySpec, n: int):
    """Upper bound on the multiplicity of a pair with degrees (a, b)."""
    p = spec.predicate
    if p == "3ec-i4ec" and n >= 4:
        # {u, v} is a nontrivial side: d(u) + d(v) - 2 mult >= 4.
        return lambda a, b: (a + b - 4) // 2
    if p == "kec" and n >= 3:
        return lambda a, b: (a + b - spec.k) // 2
    if p == "3ec-i4ec" and n == 3:
        return lambda a, b: (a + b - 3) // 2
    return min


def _accept(spec: GraphFamilySpec, g: MultiGraph) -> bool:
    p = spec.predicate
    if p == "loopless":
        return True
    if g.n == 1:
        return p in ("connected",) or (p == "kec" and spec.k == 0)
    if p == "connected":
        return g.is_connected()
    if p == "kec":
        return edge_connectivity(g, limit=spec.k) >= spec.k
    if p == "ikec":
        return g.is_connected() and is_internally_k_edge_connected(g, spec.k)
    return is_k_edge_connected(g, 3) and is_internally_k_edge_connected(g, 4)


def degree_sequences(n: int, total: int, lo: int) -> Iterator[tuple]:
    """Non-increasing sequences of n integers >= lo summing to ``total``."""

    def rec(prefix, left_n, cap, left):
        if left_n == 0:
            if left == 0:
                yield tuple(prefix)
            return
        top = min(cap, left - lo * (left_n - 1))
        for d in range(top, lo - 1, -1):
            if d * left_n < left:
                break
            prefix.append(d)
            yield from rec(prefix, left_n - 1, d, left - d)
            prefix.pop()

    yield from rec([], n, total, total)


def _realizations(deg: tuple, cap) -> Iterator[list]:
    """Labelled loopless multigraphs with the given degrees, as pair lists."""
    n = len(deg)
    rem = list(deg)
    pairs = []

    def row(i):
        if i == n:
            yield list(pairs)
            return
        if i == n - 1:
            if rem[i] == 0:
                yield list(pairs)
            return
        js = range(i + 1, n)
        caps = [max(0, min(rem[j], cap(deg[i], deg[j]))) for j in js]
        tail = [0] * (len(caps) + 1)
        for t in range(len(caps) - 1, -1, -1):
            tail[t] = tail[t + 1] + caps[t]

        def dist(t, left):
            if t == len(caps):
                if left == 0:
                    yield from row(i + 1)
                return
            j = i + 1 + t
            hi = min(left, caps[t])
            for c in range(hi, -1, -1):
                if left - c > tail[t + 1]:
                    break
                rem[j] -= c
                pairs.extend([(i, j)] * c)
                yield from dist(t + 1, left - c)
                del pairs[len(pairs) - c:]
                rem[j] += c

        yield from dist(0, rem[i])

    yield from row(0)


def enumerate_graphs(spec: GraphFamilySpec) -> Iterator[MultiGraph]:
    """One canonical representative per isomorphism class in the family.

    Walks n, then m, then degree sequences in decreasing lexicographic
    order; within a degree sequence, classes come out in first-seen order.
    """
    spec.check()
    for n in range(max(spec.n_min, 1), spec.n_max + 1):
        lo = _min_degree(spec, n)
        cap = _pair_cap(spec, n)
        for m in range(spec.m_min, spec.m_max + 1):
            if n == 1 and m > 0:
                break
            seen = set()
            for deg in degree_sequences(n, 2 * m, lo):
                for pairs in _realizations(deg, cap):
                    g = MultiGraph.from_edges(n, pairs)
                    if not _accept(spec, g):
                        continue
                    cf = canonical_form(g)
                    if cf in seen:
                        continue
                    seen.add(cf)
                    yield canonical_graph(g)


def census(spec: GraphFamilySpec) -> list[MultiGraph]:
    return list(enumerate_graphs(spec))
