# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts and search order as ``_pykernels``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

BACKEND = "cython"
DEF CINF = 1073741824


cdef int* _load(int n, object adj) except NULL:
    cdef int* r = <int*> malloc(n * n * sizeof(int))
    if r == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n * n):
        r[i] = adj[i]
    for i in range(n):
        r[i * n + i] = 0
    return r


cdef bint _augment(int n, int* r, int s, int t, int* parent, int* queue) noexcept nogil:
    cdef int head = 0, tail = 0, u, v, row
    for v in range(n):
        parent[v] = -1
    parent[s] = s
    queue[tail] = s
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
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
                queue[tail] = v
                tail += 1
    return False


cdef int _flow(int n, int* r, int s, int t, int limit, int* parent, int* queue) noexcept nogil:
    cdef int flow = 0
    while (limit < 0 or flow < limit) and _augment(n, r, s, t, parent, queue):
        flow += 1
    return flow


cdef unsigned long long _reach(int n, int* r, int s, int* stack) noexcept nogil:
    cdef unsigned long long seen = 1ULL << s
    cdef int top = 0, u, v, row
    stack[top] = s
    top += 1
    while top > 0:
        top -= 1
        u = stack[top]
        row = u * n
        for v in range(n):
            if not ((seen >> v) & 1ULL) and r[row + v] > 0:
                seen |= 1ULL << v
                stack[top] = v
                top += 1
    return seen


def max_flow(int n, adj, int s, int t, int limit=-1):
    cdef int* r = _load(n, adj)
    cdef int* work = <int*> malloc(2 * n * sizeof(int))
    cdef int f
    try:
        f = _flow(n, r, s, t, limit, work, work + n)
    finally:
        free(work)
        free(r)
    return f


def source_side(int n, adj, int s, int t):
    cdef int* r = _load(n, adj)
    cdef int* work = <int*> malloc(2 * n * sizeof(int))
    cdef int f
    cdef unsigned long long mask
    try:
        f = _flow(n, r, s, t, -1, work, work + n)
        mask = _reach(n, r, s, work)
    finally:
        free(work)
        free(r)
    return f, mask


def cut_profile(int n, adj):
    cdef long size = 1L << (n - 1)
    cdef int* a = _load(n, adj)
    cdef int* deg = <int*> malloc(n * sizeof(int))
    cdef char* inx = <char*> malloc(n)
    cdef long step, gray = 0
    cdef int i, j, v, bit, inside, row, d
    out = [0] * size
    try:
        for i in range(n):
            deg[i] = 0
            inx[i] = 0
            for j in range(n):
                deg[i] += a[i * n + j]
        inx[0] = 1
        d = deg[0]
        out[0] = d
        for step in range(1, size):
            bit = 0
            while not ((step >> bit) & 1):
                bit += 1
            v = bit + 1
            row = v * n
            inside = 0
            for i in range(n):
                if inx[i]:
                    inside += a[row + i]
            if inx[v]:
                inx[v] = 0
                d += 2 * inside - deg[v]
            else:
                inx[v] = 1
                d += deg[v] - 2 * inside
            gray ^= 1L << bit
            out[gray] = d
    finally:
        free(a)
        free(deg)
        free(inx)
    return out


def min_nontrivial_cut(int n, adj, int floor=0):
    if n < 4:
        return -1, 0
    cdef int* base = _load(n, adj)
    cdef int* r = <int*> malloc(n * n * sizeof(int))
    cdef int* work = <int*> malloc(2 * n * sizeof(int))
    cdef int a, b, c, f, limit, best = CINF
    cdef int ba = -1, bb = -1, bc = -1
    cdef bint done = False
    cdef unsigned long long mask
    try:
        for a in range(1, n):
            for b in range(1, n):
                if b == a:
                    continue
                for c in range(b + 1, n):
                    if c == a:
                        continue
                    memcpy(r, base, n * n * sizeof(int))
                    r[a] += CINF
                    r[a * n] += CINF
                    r[b * n + c] += CINF
                    r[c * n + b] += CINF
                    limit = best if best < CINF else -1
                    f = _flow(n, r, 0, b, limit, work, work + n)
                    if f < best:
                        best = f
                        ba = a
                        bb = b
                        bc = c
                        if best < floor:
                            done = True
                            break
                if done:
                    break
            if done:
                break
        memcpy(r, base, n * n * sizeof(int))
        r[ba] += CINF
        r[ba * n] += CINF
        r[bb * n + bc] += CINF
        r[bc * n + bb] += CINF
        _flow(n, r, 0, bb, -1, work, work + n)
        mask = _reach(n, r, 0, work)
    finally:
        free(base)
        free(r)
        free(work)
    return best, mask


cdef struct Router:
    int n
    int k
    int* r
    int* deg
    int* term_left
    int* pair_left
    int* pair_a
    int* pair_b
    int npairs
    int* unit_a
    int* unit_b
    int* unit_pair
    int* path_len
    int* paths      # k rows of n + 1 vertices
    int* cur        # current partial path
    char* on
    int* scratch    # n * n residual copy for flows
    int* work       # 2 * n for BFS


cdef bint _feasible(Router* R) noexcept nogil:
    cdef int v, p, need, n = R.n
    for v in range(n):
        if R.deg[v] < R.term_left[v]:
            return False
    for p in range(R.npairs):
        need = R.pair_left[p]
        if need:
            memcpy(R.scratch, R.r, n * n * sizeof(int))
            if _flow(n, R.scratch, R.pair_a[p], R.pair_b[p], need,
                     R.work, R.work + n) < need:
                return False
    return True


cdef int _cmp_lower(Router* R, int i, int length) noexcept nogil:
    # Compare current path (length vertices) with path of unit i - 1.
    cdef int j, plen = R.path_len[i - 1]
    cdef int* prev = R.paths + (i - 1) * (R.n + 1)
    for j in range(length if length < plen else plen):
        if R.cur[j] != prev[j]:
            return -1 if R.cur[j] < prev[j] else 1
    if length == plen:
        return 0
    return -1 if length < plen else 1


cdef void _apply_path(Router* R, int length, int sign) noexcept nogil:
    cdef int j, x, y, n = R.n
    for j in range(length - 1):
        x = R.cur[j]
        y = R.cur[j + 1]
        R.r[x * n + y] += sign
        R.r[y * n + x] += sign
        R.deg[x] += sign
        R.deg[y] += sign


cdef bint _dfs(Router* R, int i, int length, bint has_lower) noexcept nogil:
    cdef int u = R.cur[length - 1]
    cdef int b = R.unit_b[i], v, n = R.n, row = u * n
    cdef int p, j
    for v in range(n):
        if R.on[v] or R.r[row + v] <= 0:
            continue
        if v == b:
            R.cur[length] = b
            if has_lower and _cmp_lower(R, i, length + 1) < 0:
                continue
            _apply_path(R, length + 1, -1)
            p = R.unit_pair[i]
            R.term_left[R.unit_a[i]] -= 1
            R.term_left[b] -= 1
            R.pair_left[p] -= 1
            memcpy(R.paths + i * (n + 1), R.cur, (length + 1) * sizeof(int))
            R.path_len[i] = length + 1
            if _rec(R, i + 1):
                return True
            R.pair_left[p] += 1
            R.term_left[R.unit_a[i]] += 1
            R.term_left[b] += 1
            memcpy(R.cur, R.paths + i * (n + 1), (length + 1) * sizeof(int))
            _apply_path(R, length + 1, 1)
            memset(R.on, 0, n)
            for j in range(length):
                R.on[R.cur[j]] = 1
            continue
        R.cur[length] = v
        R.on[v] = 1
        if _dfs(R, i, length + 1, has_lower):
            return True
        R.on[v] = 0
    return False


cdef bint _rec(Router* R, int i) noexcept nogil:
    cdef int a
    cdef bint has_lower
    if i == R.k:
        return True
    if not _feasible(R):
        return False
    a = R.unit_a[i]
    has_lower = i > 0 and R.unit_pair[i - 1] == R.unit_pair[i]
    memset(R.on, 0, R.n)
    R.on[a] = 1
    R.cur[0] = a
    return _dfs(R, i, 1, has_lower)


def route(int n, adj, units):
    cdef Router R
    cdef int k = len(units), i, j, p
    cdef bint ok
    R.n = n
    R.k = k
    R.r = _load(n, adj)
    R.deg = <int*> malloc(n * sizeof(int))
    R.term_left = <int*> malloc(n * sizeof(int))
    R.pair_left = <int*> malloc((k + 1) * sizeof(int))
    R.pair_a = <int*> malloc((k + 1) * sizeof(int))
    R.pair_b = <int*> malloc((k + 1) * sizeof(int))
    R.unit_a = <int*> malloc((k + 1) * sizeof(int))
    R.unit_b = <int*> malloc((k + 1) * sizeof(int))
    R.unit_pair = <int*> malloc((k + 1) * sizeof(int))
    R.path_len = <int*> malloc((k + 1) * sizeof(int))
    R.paths = <int*> malloc((k + 1) * (n + 1) * sizeof(int))
    R.cur = <int*> malloc((n + 1) * sizeof(int))
    R.on = <char*> malloc(n)
    R.scratch = <int*> malloc(n * n * sizeof(int))
    R.work = <int*> malloc(2 * n * sizeof(int))
    pair_ids = {}
    try:
        for i in range(n):
            R.term_left[i] = 0
            R.deg[i] = 0
            for j in range(n):
                R.deg[i] += R.r[i * n + j]
        for i, (a, b) in enumerate(units):
            key = (a, b) if a < b else (b, a)
            if key not in pair_ids:
                pair_ids[key] = len(pair_ids)
            p = pair_ids[key]
            R.unit_a[i] = a
            R.unit_b[i] = b
            R.unit_pair[i] = p
            R.term_left[a] += 1
            R.term_left[b] += 1
        R.npairs = len(pair_ids)
        for (a, b), p in pair_ids.items():
            R.pair_a[p] = a
            R.pair_b[p] = b
            R.pair_left[p] = 0
        for i in range(k):
            R.pair_left[R.unit_pair[i]] += 1
        with nogil:
            ok = _rec(&R, 0)
        if not ok:
            return None
        return [tuple(R.paths[i * (n + 1) + j] for j in range(R.path_len[i]))
                for i in range(k)]
    finally:
        free(R.r)
        free(R.deg)
        free(R.term_left)
        free(R.pair_left)
        free(R.pair_a)
        free(R.pair_b)
        free(R.unit_a)
        free(R.unit_b)
        free(R.unit_pair)
        free(R.path_len)
        free(R.paths)
        free(R.cur)
        free(R.on)
        free(R.scratch)
        free(R.work)
