"""Pure-Python kernels; the reference twin of ``_ckernels.pyx``.

Every function takes a graph as ``(n, adj)`` where ``adj`` is a flat
row-major list of ``n * n`` edge multiplicities (symmetric, diagonal
ignored).  Results must match the compiled kernels exactly, including the
order in which the routing search explores paths.
"""

from collections import deque

BACKEND = "python"
INF = 1 << 30


def _augment(n, r, s, t):
    # BFS for one augmenting path in residual r; returns True if flow grew.
    parent = [-1] * n
    parent[s] = s
    queue = deque([s])
    while queue:
        u = queue.popleft()
        row = u * n
        for v in range(n):
            if parent[v] < 0 and r[row + v] > 0:
                parent[v] = u
                if v == t:
                    while v != s:
                        u = parent[v]
                        r[u * n + v] -= 1
                        r[v * n + u] += 1
                        v = u
                    return True
                queue.append(v)
    return False


def _flow(n, r, s, t, limit):
    flow = 0
    while (limit < 0 or flow < limit) and _augment(n, r, s, t):
        flow += 1
    return flow


def _residual(n, adj):
    r = list(adj)
    for i in range(n):
        r[i * n + i] = 0
    return r


def max_flow(n, adj, s, t, limit=-1):
    """Number of edge-disjoint s-t paths, capped at ``limit`` when >= 0."""
    return _flow(n, _residual(n, adj), s, t, limit)


def _reach_mask(n, r, s):
    seen = 1 << s
    stack = [s]
    while stack:
        u = stack.pop()
        row = u * n
        for v in range(n):
            if not (seen >> v) & 1 and r[row + v] > 0:
                seen |= 1 << v
                stack.append(v)
    return seen


def source_side(n, adj, s, t):
    """Max-flow value and the bitmask of a minimum cut side containing s."""
    r = _residual(n, adj)
    value = _flow(n, r, s, t, -1)
    return value, _reach_mask(n, r, s)


def cut_profile(n, adj):
    """d(X) for every X containing vertex 0.

    Entry ``i`` is the cut size of ``X = {0} | {j + 1 : bit j of i}``; the
    last entry (X = V) is 0.  Walks subsets in Gray-code order.
    """
    size = 1 << (n - 1)
    out = [0] * size
    inx = [False] * n
    inx[0] = True
    deg = [0] * n
    for i in range(n):
        row = i * n
        deg[i] = sum(adj[row + j] for j in range(n) if j != i)
    d = deg[0]
    out[0] = d
    gray = 0
    for step in range(1, size):
        bit = (step & -step).bit_length() - 1
        v = bit + 1
        row = v * n
        inside = 0
        for u in range(n):
            if inx[u] and u != v:
                inside += adj[row + u]
        if inx[v]:
            inx[v] = False
            d += 2 * inside - deg[v]
        else:
            inx[v] = True
            d += deg[v] - 2 * inside
        gray ^= 1 << bit
        out[gray] = d
    return out


def min_nontrivial_cut(n, adj, floor=0):
    """Smallest cut with at least two vertices on each side.

    Identifies vertex 0 with a partner and a disjoint pair on the far side,
    one max-flow per combination.  Returns ``(value, mask)`` with ``mask``
    the side holding vertex 0, or ``(-1, 0)`` when n < 4.  Stops early once
    a value below ``floor`` is found.
    """
    if n < 4:
        return -1, 0
    base = _residual(n, adj)
    best = INF
    best_key = None
    for a in range(1, n):
        for b in range(1, n):
            if b == a:
                continue
            for c in range(b + 1, n):
                if c == a:
                    continue
                r = list(base)
                r[a] += INF
                r[a * n] += INF
                r[b * n + c] += INF
                r[c * n + b] += INF
                limit = best if best < INF else -1
                f = _flow(n, r, 0, b, limit)
                if f < best:
                    best = f
                    best_key = (a, b, c)
                    if best < floor:
                        break
            if best < floor:
                break
        if best < floor:
            break
    a, b, c = best_key
    r = list(base)
    r[a] += INF
    r[a * n] += INF
    r[b * n + c] += INF
    r[c * n + b] += INF
    _flow(n, r, 0, b, -1)
    return best, _reach_mask(n, r, 0)


def _simple_paths(n, r, a, b):
    # Lexicographic DFS over vertex-simple a-b paths in residual r.
    path = [a]
    on = [False] * n
    on[a] = True
    stack = [0]
    while stack:
        u = path[-1]
        v = stack[-1]
        row = u * n
        while v < n and (on[v] or r[row + v] <= 0):
            v += 1
        if v == n:
            stack.pop()
            on[path.pop()] = False
            if stack:
                stack[-1] += 1
            continue
        stack[-1] = v
        if v == b:
            yield path + [b]
            stack[-1] += 1
            continue
        path.append(v)
        on[v] = True
        stack.append(0)


def route(n, adj, units):
    """Route demand units as pairwise edge-disjoint simple paths.

    ``units`` is a list of ``(a, b)`` terminal pairs; equal consecutive pairs
    form one group whose paths are taken in non-decreasing lexicographic
    order.  Returns the list of vertex paths (one per unit) or ``None``.
    """
    r = _residual(n, adj)
    k = len(units)
    pair_ids = {}
    unit_pair = []
    for a, b in units:
        key = (a, b) if a < b else (b, a)
        unit_pair.append(pair_ids.setdefault(key, len(pair_ids)))
    pairs = list(pair_ids)
    pair_left = [0] * len(pairs)
    for p in unit_pair:
        pair_left[p] += 1
    term_left = [0] * n
    for a, b in units:
        term_left[a] += 1
        term_left[b] += 1
    deg = [0] * n
    for i in range(n):
        row = i * n
        deg[i] = sum(r[row + j] for j in range(n))
    chosen = []

    def feasible():
        for v in range(n):
            if deg[v] < term_left[v]:
                return False
        for p, (a, b) in enumerate(pairs):
            need = pair_left[p]
            if need and _flow(n, list(r), a, b, need) < need:
                return False
        return True

    def rec(i):
        if i == k:
            return True
        if not feasible():
            return False
        a, b = units[i]
        p = unit_pair[i]
        lower = chosen[-1] if i > 0 and unit_pair[i - 1] == p else None
        for path in _simple_paths(n, r, a, b):
            if lower is not None and path < lower:
                continue
            for x, y in zip(path, path[1:]):
                r[x * n + y] -= 1
                r[y * n + x] -= 1
                deg[x] -= 1
                deg[y] -= 1
            term_left[a] -= 1
            term_left[b] -= 1
            pair_left[p] -= 1
            chosen.append(path)
            if rec(i + 1):
                return True
            chosen.pop()
            pair_left[p] += 1
            term_left[a] += 1
            term_left[b] += 1
            for x, y in zip(path, path[1:]):
                r[x * n + y] += 1
                r[y * n + x] += 1
                deg[x] += 1
                deg[y] += 1
        return False

    if rec(0):
        return [tuple(p) for p in chosen]
    return None
