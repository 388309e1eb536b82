"""Canonical labelling and isomorphism for small multigraphs.

Colour refinement with individualisation, branching only on the first
smallest non-singleton cell.  Twin vertices (same multiplicities to every
other vertex) are interchangeable, so only one per twin class is branched
on.  Fine up to a dozen or so vertices, which is all the census needs.
"""

from __future__ import annotations

from .graph import MultiGraph


def _matrix(g: MultiGraph) -> list[list[int]]:
    n = g.n
    idx = g.index
    a = [[0] * n for _ in range(n)]
    for u, v in g.edges.values():
        i, j = idx[u], idx[v]
        if i == j:
            a[i][i] += 1
        else:
            a[i][j] += 1
            a[j][i] += 1
    return a


def _refine(a, colors):
    n = len(colors)
    ncol = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            row = a[v]
            nb = sorted((colors[u], row[u]) for u in range(n) if u != v and row[u])
            sigs.append((colors[v], tuple(nb)))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        k = len(ranks)
        if k == ncol:
            return colors
        ncol = k


def _twin_classes(a):
    n = len(a)
    cls = list(range(n))
    for v in range(n):
        if cls[v] != v:
            continue
        for w in range(v + 1, n):
            if cls[w] != w or a[v][v] != a[w][w]:
                continue
            if all(a[v][x] == a[w][x] for x in range(n) if x != v and x != w):
                cls[w] = v
    return cls


def _search(a, colors, twins, best):
    n = len(a)
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1 and (target is None or len(cells[c]) < len(target)):
            target = cells[c]
    if target is None:
        order = sorted(range(n), key=colors.__getitem__)
        cert = tuple(a[order[i]][order[j]] for i in range(n) for j in range(i, n))
        if best[0] is None or cert < best[0]:
            best[0] = cert
            best[1] = order
        return
    tried = set()
    for v in target:
        if twins[v] in tried:
            continue
        tried.add(twins[v])
        nc = [2 * c + 1 for c in colors]
        nc[v] -= 1
        _search(a, _refine(a, nc), twins, best)


def canonical_labeling(g: MultiGraph) -> tuple[tuple, list]:
    """Certificate and the vertex ids listed in canonical position order.

    Two graphs are isomorphic iff their certificates are equal.
    """
    a = _matrix(g)
    n = g.n
    if n == 0:
        return (0,), []
    init = [(sum(a[v]) + a[v][v], a[v][v]) for v in range(n)]
    ranks = {s: r for r, s in enumerate(sorted(set(init)))}
    colors = _refine(a, [ranks[s] for s in init])
    best = [None, None]
    _search(a, colors, _twin_classes(a), best)
    verts = g.vertices
    return (n,) + best[0], [verts[i] for i in best[1]]


def canonical_form(g: MultiGraph) -> tuple:
    return canonical_labeling(g)[0]


def is_isomorphic(g: MultiGraph, h: MultiGraph, witness: bool = False):
    """Isomorphism test; with ``witness`` returns the vertex map g -> h or None."""
    if g.n != h.n or g.m != h.m:
        return None if witness else False
    if sorted(g.degrees().values()) != sorted(h.degrees().values()):
        return None if witness else False
    cg, og = canonical_labeling(g)
    ch, oh = canonical_labeling(h)
    if cg != ch:
        return None if witness else False
    if not witness:
        return True
    return dict(zip(og, oh))


def canonical_graph(g: MultiGraph) -> MultiGraph:
    """Isomorphic copy on vertices ``0..n-1`` in canonical order."""
    cert, order = canonical_labeling(g)
    pos = {v: i for i, v in enumerate(order)}
    pairs = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges.values()
    )
    return MultiGraph.from_edges(g.n, pairs)


def automorphisms(h: MultiGraph) -> list[dict]:
    """All automorphisms by backtracking; intended for graphs of <= 8 vertices."""
    a = _matrix(h)
    n = h.n
    deg = [sum(a[v]) + a[v][v] for v in range(n)]
    perm = [-1] * n
    used = [False] * n
    out = []

    def rec(i):
        if i == n:
            out.append(list(perm))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[i] or a[w][w] != a[i][i]:
                continue
            if any(a[i][j] != a[w][perm[j]] for j in range(i)):
                continue
            perm[i] = w
            used[w] = True
            rec(i + 1)
            used[w] = False
        perm[i] = -1

    rec(0)
    verts = h.vertices
    return [{verts[i]: verts[p[i]] for i in range(n)} for p in out]
