"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from immsplit import _pykernels
from immsplit.catalog import named_graph, seeded_random_multigraph

try:
    from immsplit import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    graphs = [named_graph(x) for x in ("K6", "octahedron", "Q3", "petersen")]
    graphs += [seeded_random_multigraph(8, 16, seed, loopless=True) for seed in range(4)]
    k5 = named_graph("K5")
    units = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    k6 = named_graph("K6")

    def max_flow(mod):
        for g in graphs:
            for t in range(1, g.n):
                mod.max_flow(g.n, g.adjacency, 0, t)

    def cut_profile(mod):
        for g in graphs:
            mod.cut_profile(g.n, g.adjacency)

    def route(mod):
        mod.route(k6.n, k6.adjacency, units)
        mod.route(k5.n, k5.adjacency, units)

    return {"max_flow": max_flow, "cut_profile": cut_profile, "route": route}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = [("python", _pykernels)]
    if _ckernels is not None:
        impls.append(("cython", _ckernels))
    print(f"{'kernel':<12}" + "".join(f"{name:>12}" for name, _ in impls) + f"{'speedup':>10}")
    for name, fn in workloads().items():
        times = [
            min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) for _, mod in impls
        ]
        row = f"{name:<12}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
