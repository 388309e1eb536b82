"""Good-operation search engines, reduction chains and cut-level verifiers.

Two graph classes are supported:

* ``EvenK(k)``: (nearly) k-edge-connected graphs, k even.  Allowed
  operations are edge deletions, split-offs at vertices of degree >= k + 2,
  and complete splits at k-vertices or at the special vertex.
* ``I4()``: 3-edge-connected, internally 4-edge-connected loopless graphs.
  Allowed operations are edge deletions and split-offs at vertices of
  degree >= 4.

Every operation is followed by normalization (loop deletion plus degree-2
suppression) and compaction to vertices ``0..n-1`` and edges ``0..m-1``, so
each result prints to the same MGR text it parses back from.  The engines
search candidates in a fixed order and return the first good one; nothing
is taken on trust, and ``verify_good_result`` rechecks a result with the
subset sweep instead of max-flow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from . import connectivity as conn
from .catalog import cube, fat_edge, complete_graph, complete_bipartite, octahedron
from .errors import BadMode, NotFound, PreconditionViolated, Stuck, TooLarge
from .graph import (
    CompleteSplit,
    DeleteEdge,
    MultiGraph,
    Operation,
    SplitOff,
    apply,
    normalize,
    operation_from_json,
    parse_mgr,
    to_mgr,
)
from .immersion import ImmersionCertificate, find_immersion, verify_immersion
from .iso import is_isomorphic

MAX_PAIRING_DEGREE = 8


# -- modes ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvenK:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2 or self.k % 2:
            raise BadMode(f"EvenK needs an even k >= 2, got {self.k!r}")

    def __str__(self):
        return f"evenk:{self.k}"


@dataclass(frozen=True)
class I4:
    def __str__(self):
        return "i4"


Mode = EvenK | I4


def parse_mode(text: str) -> Mode:
    """``"i4"`` or ``"evenk:K"``."""
    t = text.strip().lower()
    if t == "i4":
        return I4()
    m = re.fullmatch(r"evenk:(-?\d+)", t)
    if m:
        return EvenK(int(m.group(1)))
    raise BadMode(f"unknown mode {text!r}; expected 'i4' or 'evenk:K'")


def _check_mode(mode):
    if not isinstance(mode, (EvenK, I4)):
        raise BadMode(f"not a mode: {mode!r}")


# -- class membership ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    """Connectivity evidence: global edge-connectivity, smallest nontrivial
    cut (None when n < 4) and the special vertex, if any."""

    mode: str
    in_class: bool
    edge_connectivity: int
    min_nontrivial_cut: int | None = None
    special: object = None

    def to_json(self):
        return {
            "mode": self.mode,
            "in_class": self.in_class,
            "edge_connectivity": self.edge_connectivity,
            "min_nontrivial_cut": self.min_nontrivial_cut,
            "special": self.special,
        }


ANY = object()


def class_report(g: MultiGraph, mode: Mode, special=ANY) -> ClassReport:
    """Flow-based membership test.

    For ``EvenK``, a graph that is only nearly k-edge-connected must have
    exactly the given special vertex; ``special=None`` demands full
    k-edge-connectivity and the default ``ANY`` accepts any special vertex.
    """
    _check_mode(mode)
    if g.degenerate or g.n < 2 or not g.is_loopless():
        return ClassReport(str(mode), False, 0)
    lam = conn.edge_connectivity(g)
    if isinstance(mode, I4):
        cut = conn.min_nontrivial_cut(g, floor=4)
        size = None if cut is None else cut.size
        ok = lam >= 3 and (size is None or size >= 4)
        return ClassReport(str(mode), ok, lam, size)
    if lam >= mode.k:
        return ClassReport(str(mode), True, lam)
    rep = conn.is_nearly_k_edge_connected(g, mode.k)
    ok = rep.is_nearly and (special is ANY or rep.special == special)
    return ClassReport(str(mode), ok, lam, None, rep.special)


def in_class(g: MultiGraph, mode: Mode, special=ANY) -> bool:
    return class_report(g, mode, special).in_class


def in_class_by_sweep(g: MultiGraph, mode: Mode, special=ANY) -> bool:
    """Membership from the full list of cut sizes; independent of max-flow."""
    _check_mode(mode)
    if g.degenerate or g.n < 2 or not g.is_loopless():
        return False
    n = g.n
    prof = conn.cut_sizes(g)
    verts = g.vertices
    # Entry i is the side {v0} + {v_{j+1} : bit j of i}; the last entry is V.
    smalls = []
    for i, d in enumerate(prof[:-1]):
        size = 1 + bin(i).count("1")
        smalls.append((size, i, d))
    if isinstance(mode, I4):
        for size, _, d in smalls:
            if d < 3:
                return False
            if d < 4 and 2 <= size <= n - 2:
                return False
        return True
    k = mode.k
    bad = [(size, i) for size, i, d in smalls if d < k]
    if not bad:
        return True
    # Nearly: every small cut is the trivial cut of one even vertex of degree < k.
    sides = set()
    for size, i in bad:
        if size == 1:
            sides.add(verts[0])
        elif size == n - 1:
            missing = [verts[j + 1] for j in range(n - 1) if not (i >> j) & 1]
            sides.add(missing[0])
        else:
            return False
    if len(sides) != 1:
        return False
    (s,) = sides
    d = g.degree(s)
    if d % 2 or d >= k:
        return False
    return special is ANY or s == special


def _special_of(g: MultiGraph, mode: Mode):
    if isinstance(mode, EvenK) and not conn.is_k_edge_connected(g, mode.k):
        return conn.is_nearly_k_edge_connected(g, mode.k).special
    return None


# -- candidates ----------------------------------------------------------------------


def _pairings(slots: list):
    """Perfect matchings of ``slots`` in rank order: the first slot is paired
    with each later slot in turn, then the rest recursively.  Both ends of a
    loop are never paired together."""
    if not slots:
        yield ()
        return
    a = slots[0]
    for i in range(1, len(slots)):
        b = slots[i]
        if a == b:
            continue
        rest = slots[1:i] + slots[i + 1 :]
        for tail in _pairings(rest):
            yield ((a, b),) + tail


def complete_split_pairings(g: MultiGraph, v) -> list[tuple]:
    """Distinct pairings of the edge ends at ``v``; TooLarge above degree 8."""
    d = g.degree(v)
    if d > MAX_PAIRING_DEGREE:
        raise TooLarge(f"complete splits enumerated only up to degree {MAX_PAIRING_DEGREE}")
    slots = []
    for e in g.incident(v):
        u, w = g.endpoints(e)
        slots += [e, e] if u == w else [e]
    seen = set()
    out = []
    for p in _pairings(slots):
        key = tuple(sorted(tuple(sorted(pr)) for pr in p))
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def candidate_operations(
    g: MultiGraph, mode: Mode, special=ANY, only: str | None = None
) -> list[Operation]:
    """Allowed operations in search order: deletions by edge id, split-offs by
    (vertex, e1, e2), complete splits by (vertex, pairing rank).

    The special vertex is computed unless given.  ``only`` restricts to one
    kind: ``"delete"``, ``"split"`` or ``"complete"``.
    """
    _check_mode(mode)
    if special is ANY:
        special = _special_of(g, mode)
    if only not in (None, "delete", "split", "complete"):
        raise ValueError(f"unknown operation kind {only!r}")
    ops: list[Operation] = []
    if only in (None, "delete"):
        ops += [DeleteEdge(e) for e in g.edges]
    low = 4 if isinstance(mode, I4) else mode.k + 2
    if only in (None, "split"):
        for v in g.vertices:
            if g.degree(v) >= low:
                ops += [SplitOff(a, b, v) for a, b in combinations(g.incident(v), 2)]
    if isinstance(mode, EvenK) and only in (None, "complete"):
        for v in g.vertices:
            if g.degree(v) == mode.k or (v == special and g.degree(v) > 0):
                ops += [CompleteSplit(v, p) for p in complete_split_pairings(g, v)]
    return ops


# -- engine --------------------------------------------------------------------------


@dataclass(frozen=True)
class GoodOpResult:
    op: Operation
    result: MultiGraph
    cert: ImmersionCertificate
    class_report: ClassReport

    def to_json(self, h: MultiGraph) -> dict:
        return {
            "op": self.op.to_json(),
            "result": to_mgr(self.result),
            "cert": self.cert.to_json(h),
            "class_report": self.class_report.to_json(),
        }


def outcome(g: MultiGraph, op: Operation) -> tuple[MultiGraph, dict]:
    """Normalized, compacted result of ``op`` plus the vertex renaming."""
    r, vmap, _ = normalize(apply(g, op)).compact()
    return r, vmap


_EXCEPTIONS = None


def _declared_exceptions():
    global _EXCEPTIONS
    if _EXCEPTIONS is None:
        _EXCEPTIONS = [(cube(), complete_graph(4)), (cube(), fat_edge(3))]
    return _EXCEPTIONS


def is_declared_exception(g: MultiGraph, h: MultiGraph, mode: Mode) -> bool:
    """(Q3, K4) and (Q3, K2^3) under I4, up to isomorphism."""
    if not isinstance(mode, I4):
        return False
    return any(is_isomorphic(g, a) and is_isomorphic(h, b) for a, b in _declared_exceptions())


def check_preconditions(g: MultiGraph, h: MultiGraph, mode: Mode):
    """Raise PreconditionViolated naming the first failing clause."""
    _check_mode(mode)
    if h.n < 2:
        raise PreconditionViolated("h-size", "H needs at least two vertices")
    if not h.is_loopless():
        raise PreconditionViolated("h-class", "H must be loopless")
    h_class = EvenK(mode.k) if isinstance(mode, EvenK) else mode
    if isinstance(mode, EvenK):
        if not conn.is_k_edge_connected(h, mode.k):
            raise PreconditionViolated("h-class", f"H is not {mode.k}-edge-connected")
    elif not in_class(h, h_class):
        raise PreconditionViolated("h-class", "H is not in the class")
    if not in_class(g, mode):
        raise PreconditionViolated("class", "G is not in the class")
    if is_isomorphic(g, h):
        raise PreconditionViolated("isomorphic", "G is isomorphic to H")
    if find_immersion(g, h) is None:
        raise PreconditionViolated("immersion", "G does not immerse H")


def _search(g, h, mode, only):
    special = _special_of(g, mode)
    for op in candidate_operations(g, mode, special, only):
        r, vmap = outcome(g, op)
        if r.degenerate or r.n < h.n:
            continue
        # Same special vertex, or none at all once it has been split away.
        rep = class_report(r, mode, special=vmap.get(special))
        if not rep.in_class:
            continue
        cert = find_immersion(r, h)
        if cert is None:
            continue
        return GoodOpResult(op, r, cert, rep)
    return None


def find_good_operation(
    g: MultiGraph, h: MultiGraph, mode: Mode, only: str | None = None
) -> GoodOpResult | None:
    """First candidate whose normalized result stays in the class and still
    immerses H, or None.  ``only`` restricts the candidate kinds.

    For I4, None is expected exactly for the two declared exceptions.
    """
    check_preconditions(g, h, mode)
    return _search(g, h, mode, only)


def verify_good_result(g: MultiGraph, h: MultiGraph, mode: Mode, res: GoodOpResult) -> bool:
    """Recheck a result without trusting the engine: the operation is
    allowed, replays to the stored graph, the class holds by subset sweep and
    the certificate verifies."""
    special = _special_of(g, mode)
    if res.op not in set(candidate_operations(g, mode, special)):
        return False
    r, vmap = outcome(g, res.op)
    if r != res.result or r.degenerate:
        return False
    if not in_class_by_sweep(r, mode, vmap.get(special)):
        return False
    return bool(verify_immersion(r, h, res.cert))


# -- reduction chains ----------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    graph: MultiGraph
    op: Operation
    result: GoodOpResult


@dataclass
class ReductionTrace:
    h: MultiGraph
    mode: Mode
    steps: list = field(default_factory=list)
    final: MultiGraph | None = None
    status: str = "reached"

    def to_json(self) -> dict:
        return {
            "mode": str(self.mode),
            "h": to_mgr(self.h),
            "status": self.status,
            "steps": [
                {
                    "graph": to_mgr(s.graph),
                    "op": s.op.to_json(),
                    "cert": s.result.cert.to_json(self.h),
                }
                for s in self.steps
            ],
            "final": to_mgr(self.final) if self.final is not None else None,
        }


def reduce_chain(g: MultiGraph, h: MultiGraph, mode: Mode) -> ReductionTrace:
    """Apply good operations until the graph is isomorphic to H.

    Raises Stuck when no good operation exists; ``declared`` tells a listed
    exception apart from a theorem-violation alarm.
    """
    check_preconditions(g, h, mode)
    cur = g.compact()[0]
    trace = ReductionTrace(h, mode)
    while True:
        res = _search(cur, h, mode, None)
        if res is None:
            trace.final = cur
            trace.status = "stuck"
            raise Stuck(cur, is_declared_exception(cur, h, mode), trace)
        trace.steps.append(TraceStep(cur, res.op, res))
        cur = res.result
        if is_isomorphic(cur, h):
            trace.final = cur
            return trace


def replay_trace(obj: dict) -> bool:
    """Re-run every recorded step from its MGR text and compare outputs."""
    h = parse_mgr(obj["h"])
    steps = obj["steps"]
    for i, step in enumerate(steps):
        g = parse_mgr(step["graph"])
        r, _ = outcome(g, operation_from_json(step["op"]))
        want = steps[i + 1]["graph"] if i + 1 < len(steps) else obj["final"]
        if to_mgr(r) != want:
            return False
        cert = ImmersionCertificate.from_json(step["cert"], h)
        if not verify_immersion(r, h, cert):
            return False
    return True


# -- cut-level witnesses ---------------------------------------------------------------


def _nearly_special(g: MultiGraph, k: int):
    rep = conn.is_nearly_k_edge_connected(g, k)
    if not rep.is_nearly:
        raise PreconditionViolated("class", f"G is not nearly {k}-edge-connected")
    return rep.special


def tight_set_deletable_edge(g: MultiGraph, side, k: int) -> int:
    """An edge inside X whose deletion keeps G (nearly) k-edge-connected
    with the same special vertex, given d(X) = k and every vertex of X of
    degree k + 1.

    Edges are tried inside a smallest X' of X with d(X') = k.
    """
    x = sorted(set(side))
    if not x or len(x) >= g.n:
        raise PreconditionViolated("side", "X must be a nonempty proper subset")
    special = _nearly_special(g, k)
    if conn.cut_size(g, x) != k:
        raise PreconditionViolated("tight", f"d(X) != {k}")
    if any(g.degree(v) != k + 1 for v in x):
        raise PreconditionViolated("degree", f"every vertex of X must have degree {k + 1}")
    best = None
    for size in range(1, len(x) + 1):
        for sub in combinations(x, size):
            if conn.cut_size(g, sub) == k:
                best = set(sub)
                break
        if best:
            break
    for e, (u, v) in g.edges.items():
        if u in best and v in best:
            rep = conn.is_nearly_k_edge_connected(g.without_edges([e]), k)
            if rep.is_nearly and rep.special in (None, special):
                return e
    raise NotFound("no deletable edge inside the tight set")


def is_interesting_cut(g: MultiGraph, side) -> bool:
    """A 4-edge-cut where each side has at least three vertices, or exactly
    two vertices that are not both of degree 3."""
    x = set(side)
    if conn.cut_size(g, x) != 4:
        raise PreconditionViolated("cut-size", "an interesting cut has exactly four edges")

    def ok(part):
        if len(part) >= 3:
            return True
        return len(part) == 2 and not all(g.degree(v) == 3 for v in part)

    return ok(x) and ok(set(g.vertices) - x)


def verify_minimal_3cut_deletion(h: MultiGraph) -> bool:
    """For every inclusion-minimal side Y of a nontrivial 3-edge-cut in a
    3-edge-connected H and every edge e inside Y, H minus e is internally
    3-edge-connected."""
    if not conn.is_k_edge_connected(h, 3):
        raise PreconditionViolated("class", "H is not 3-edge-connected")
    sides = []
    verts = set(h.vertices)
    for cut in conn.enumerate_cuts_upto(h, 3):
        if cut.size == 3 and not cut.is_trivial(h):
            sides += [cut.side, frozenset(verts - cut.side)]
    if not sides:
        raise PreconditionViolated("cut", "H has no nontrivial 3-edge-cut")
    minimal = [y for y in sides if not any(z < y for z in sides)]
    for y in minimal:
        for e, (u, v) in h.edges.items():
            if u in y and v in y:
                if not conn.is_internally_k_edge_connected(h.without_edges([e]), 3):
                    return False
    return True


# -- K5 -> K33 ---------------------------------------------------------------------------

IMMERSES_K33 = "ImmersesK33"
IS_OCTAHEDRON = "IsOctahedron"
NOT_APPLICABLE = "NotApplicable"
VIOLATION = "Violation"


def k5_immerser_verdict(g: MultiGraph) -> str:
    """Classify a graph against the K5 -> K33 immersion statement.

    NotApplicable unless G is 3-edge-connected, internally 4-edge-connected,
    has at least six vertices and immerses K5.  Otherwise ImmersesK33, or
    IsOctahedron, or Violation when neither holds.
    """
    g = g.without_edges(g.loops())
    if g.n < 6 or not in_class(g, I4()):
        return NOT_APPLICABLE
    if find_immersion(g, complete_graph(5)) is None:
        return NOT_APPLICABLE
    if find_immersion(g, complete_bipartite(3, 3)) is not None:
        return IMMERSES_K33
    if is_isomorphic(g, octahedron()):
        return IS_OCTAHEDRON
    return VIOLATION
