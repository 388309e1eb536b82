import os
import random
import subprocess
import sys

import pytest

from immsplit import _pykernels, kernels

from conftest import random_graphs

try:
    from immsplit import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_can_be_forced():
    env = dict(os.environ, IMMSPLIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import immsplit.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_max_flow_limit_and_fat_edge():
    adj = [0, 5, 5, 0]
    assert _pykernels.max_flow(2, adj, 0, 1) == 5
    assert _pykernels.max_flow(2, adj, 0, 1, 3) == 3


def test_cut_profile_layout():
    # Path 0-1-2: X = {0}, {0,1}, {0,2}, {0,1,2}.
    adj = [0, 1, 0, 1, 0, 1, 0, 1, 0]
    assert _pykernels.cut_profile(3, adj) == [1, 1, 2, 0]


def test_route_simple_cases():
    # Triangle: the 0-2 demand can go direct; a second one must go round.
    adj = [0, 1, 1, 1, 0, 1, 1, 1, 0]
    assert _pykernels.route(3, adj, [(0, 2), (0, 2)]) == [(0, 1, 2), (0, 2)]
    assert _pykernels.route(3, adj, [(0, 2)] * 3) is None


@needs_ext
def test_backends_agree_on_random_inputs():
    rnd = random.Random(5)
    for g in random_graphs(300, 11, n_max=7, m_max=14):
        n, a = g.n, g.adjacency
        assert _ckernels.cut_profile(n, a) == _pykernels.cut_profile(n, a)
        assert _ckernels.min_nontrivial_cut(n, a) == _pykernels.min_nontrivial_cut(n, a)
        s, t = rnd.sample(range(n), 2)
        assert _ckernels.max_flow(n, a, s, t) == _pykernels.max_flow(n, a, s, t)
        assert _ckernels.source_side(n, a, s, t) == _pykernels.source_side(n, a, s, t)
        units = sorted(tuple(sorted(rnd.sample(range(n), 2))) for _ in range(rnd.randint(1, 4)))
        assert _ckernels.route(n, a, units) == _pykernels.route(n, a, units)


@pytest.mark.parametrize("mod", [_pykernels, _ckernels], ids=["python", "cython"])
def test_route_paths_are_edge_disjoint(mod):
    if mod is None:
        pytest.skip("compiled kernels not built")
    rnd = random.Random(9)
    for g in random_graphs(200, 3, n_max=6, m_max=12, loopless=True):
        n, a = g.n, g.adjacency
        units = sorted(tuple(sorted(rnd.sample(range(n), 2))) for _ in range(rnd.randint(1, 3)))
        paths = mod.route(n, a, units)
        if paths is None:
            continue
        used = [0] * (n * n)
        for (s, t), p in zip(units, paths):
            assert {p[0], p[-1]} == {s, t}
            assert len(set(p)) == len(p)
            for x, y in zip(p, p[1:]):
                used[x * n + y] += 1
                used[y * n + x] += 1
        assert all(u <= c for u, c in zip(used, a))
