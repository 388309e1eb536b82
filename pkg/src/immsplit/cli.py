"""Command-line interface: ``immsplit {conn,immerse,goodop,reduce,enum,verify}``.

Every subcommand except ``enum`` prints a JSON run report.  Exit codes:
0 success (including declared exceptions), 1 parse or usage error,
2 precondition violated, 3 theorem-violation alarm.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import connectivity as conn
from .catalog import PREDICATES, GraphFamilySpec, enumerate_graphs, named_graph
from .errors import BadMode, GraphError, ParseError, PreconditionViolated, Stuck, TooLarge
from .graph import MultiGraph, parse_mgr, to_mgr
from .immersion import find_immersion, verify_immersion
from .splitter import (
    find_good_operation,
    is_declared_exception,
    parse_mode,
    reduce_chain,
    verify_good_result,
)
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_ALARM = 3


class _Usage(Exception):
    pass


def _read_graph(spec: str) -> tuple[MultiGraph, str]:
    """Load ``spec``: a file path, ``-`` for stdin, or ``name:K5`` style."""
    if spec.startswith("name:"):
        g = named_graph(spec[5:])
        return g, to_mgr(g)
    try:
        text = sys.stdin.read() if spec == "-" else open(spec, encoding="utf-8").read()
    except OSError as exc:
        raise _Usage(f"cannot read {spec}: {exc.strerror}") from None
    try:
        return parse_mgr(text), text
    except ParseError as exc:
        raise ParseError(exc.line, f"{spec}:{exc.line}: {exc.message}") from None


def _digest(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\0")
    return h.hexdigest()


def _report(args, digest: str, verdicts: dict, counterexamples=()) -> dict:
    return {
        "command": args.argv,
        "inputs_digest": digest,
        "verdicts": verdicts,
        "counterexamples": list(counterexamples),
    }


def _write_json(path: str, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


# -- subcommands ------------------------------------------------------------------


def cmd_conn(args):
    g, text = _read_graph(args.graph)
    v = {"n": g.n, "m": g.m}
    if g.n >= 2:
        cut = conn.global_min_cut(g)
        v["edge_connectivity"] = cut.size
        v["min_cut_side"] = sorted(cut.side)
    if args.k is not None:
        k = args.k
        if g.n < 2:
            raise _Usage("connectivity predicates need at least two vertices")
        if args.nearly:
            rep = conn.is_nearly_k_edge_connected(g, k)
            v["nearly"] = rep.is_nearly
            v["special"] = rep.special
            v["verdict"] = rep.is_nearly
        elif args.internal:
            ok, cut = conn.is_internally_k_edge_connected(g, k, witness=True)
            v["internal"] = ok
            v["verdict"] = ok
            if cut is not None:
                v["witness_cut"] = {"side": sorted(cut.side), "size": cut.size}
        else:
            ok = conn.is_k_edge_connected(g, k)
            v["verdict"] = ok
            if not ok:
                cut = conn.global_min_cut(g)
                v["witness_cut"] = {"side": sorted(cut.side), "size": cut.size}
    return _report(args, _digest(text, str(args.k), str(args.internal), str(args.nearly)), v), EXIT_OK


def cmd_immerse(args):
    g, gt = _read_graph(args.g)
    h, ht = _read_graph(args.h)
    if not h.is_loopless():
        raise PreconditionViolated("h-class", "H must be loopless")
    cert = find_immersion(g, h)
    v = {"found": cert is not None}
    if cert is not None:
        v["verified"] = bool(verify_immersion(g, h, cert))
        v["certificate"] = cert.to_json(h)
        if args.cert:
            _write_json(args.cert, cert.to_json(h))
    return _report(args, _digest(gt, ht), v), EXIT_OK


def cmd_goodop(args):
    g, gt = _read_graph(args.g)
    h, ht = _read_graph(args.h)
    mode = parse_mode(args.mode)
    res = find_good_operation(g, h, mode, only=args.only)
    digest = _digest(gt, ht, str(mode), str(args.only))
    if res is None:
        declared = is_declared_exception(g, h, mode)
        v = {"found": False, "declared_exception": declared}
        if declared:
            v["note"] = "declared exception: no good operation is expected"
            return _report(args, digest, v), EXIT_OK
        return _report(args, digest, v, [{"graph": to_mgr(g), "h": to_mgr(h)}]), EXIT_ALARM
    v = {
        "found": True,
        "verified": verify_good_result(g, h, mode, res),
        "step": res.to_json(h),
    }
    if args.trace:
        _write_json(args.trace, {
            "mode": str(mode),
            "h": to_mgr(h),
            "steps": [{"graph": to_mgr(g), "op": res.op.to_json(), "cert": res.cert.to_json(h)}],
            "final": to_mgr(res.result),
        })
    return _report(args, digest, v), EXIT_OK


def cmd_reduce(args):
    g, gt = _read_graph(args.g)
    h, ht = _read_graph(args.h)
    mode = parse_mode(args.mode)
    digest = _digest(gt, ht, str(mode))
    try:
        trace = reduce_chain(g, h, mode)
    except Stuck as exc:
        tj = exc.trace.to_json() if exc.trace is not None else None
        if args.trace and tj is not None:
            _write_json(args.trace, tj)
        v = {"reached": False, "declared_exception": exc.declared, "steps": len(tj["steps"]) if tj else 0}
        if exc.declared:
            v["note"] = "declared exception: stuck at an excluded pair"
            return _report(args, digest, v), EXIT_OK
        return _report(args, digest, v, [{"graph": to_mgr(exc.graph), "h": to_mgr(h)}]), EXIT_ALARM
    tj = trace.to_json()
    if args.trace:
        _write_json(args.trace, tj)
    v = {"reached": True, "steps": len(tj["steps"]), "trace": tj}
    return _report(args, digest, v), EXIT_OK


def cmd_enum(args):
    spec = GraphFamilySpec(
        args.nmax, args.mmax, args.predicate, k=args.k, n_min=args.nmin, m_min=args.mmin
    )
    count = 0
    out = sys.stdout
    for g in enumerate_graphs(spec):
        if not args.count:
            if count:
                out.write("\n")
            out.write(to_mgr(g))
        count += 1
    if args.count:
        out.write(f"{count}\n")
    return None, EXIT_OK


def cmd_verify(args):
    rep = run_suite(
        args.suite, args.nmax, args.mmax, seed=args.seed, jobs=args.jobs, samples=args.samples
    )
    j = rep.to_json()
    failures = j.pop("failures")
    params = json.dumps(j["params"], sort_keys=True)
    report = _report(args, _digest(args.suite, params), j, failures)
    return report, (EXIT_OK if rep.ok else EXIT_ALARM)


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="immsplit",
        description="Multigraph immersion and splitter-theorem toolkit.",
    )
    p.add_argument("--timing", action="store_true", help="add wall time to the report")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("conn", help="edge-connectivity verdicts with witness cuts")
    c.add_argument("graph", help="MGR file, '-' for stdin, or name:<graph>")
    c.add_argument("--k", type=int)
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--internal", action="store_true", help="internal k-edge-connectivity")
    grp.add_argument("--nearly", action="store_true", help="nearly k-edge-connectivity")
    c.set_defaults(func=cmd_conn)

    i = sub.add_parser("immerse", help="search for an immersion of H in G")
    i.add_argument("g")
    i.add_argument("h")
    i.add_argument("--cert", help="write the certificate JSON here")
    i.set_defaults(func=cmd_immerse)

    for name, func, helptext in (
        ("goodop", cmd_goodop, "find one good operation"),
        ("reduce", cmd_reduce, "reduce G to H by good operations"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("g")
        s.add_argument("h")
        s.add_argument("--mode", required=True, help="i4 or evenk:K")
        s.add_argument("--trace", help="write the trace JSON here")
        if name == "goodop":
            s.add_argument("--only", choices=("delete", "split", "complete"))
        s.set_defaults(func=func)

    e = sub.add_parser("enum", help="isomorph-free enumeration as MGR blocks")
    e.add_argument("--nmax", type=int, required=True)
    e.add_argument("--mmax", type=int, required=True)
    e.add_argument("--nmin", type=int, default=1)
    e.add_argument("--mmin", type=int, default=0)
    e.add_argument("--predicate", choices=PREDICATES, default="connected")
    e.add_argument("--k", type=int, default=0)
    e.add_argument("--count", action="store_true", help="print only the number of classes")
    e.set_defaults(func=cmd_enum)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--nmax", type=int)
    v.add_argument("--mmax", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.argv = argv
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except PreconditionViolated as exc:
        print(json.dumps({"error": "PreconditionViolated", "clause": exc.clause, "message": str(exc)}))
        return EXIT_PRECONDITION
    except ParseError as exc:
        print(f"parse error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except (_Usage, BadMode, TooLarge, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        if args.timing:
            report["wall_time"] = round(time.perf_counter() - start, 3)
        print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
