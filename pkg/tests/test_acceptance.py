"""Acceptance criteria 1-9 at full size.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

import json
import time
from contextlib import contextmanager

import pytest

from immsplit.catalog import GraphFamilySpec, census
from immsplit.cli import main
from immsplit.immersion import find_immersion, immersion_oracle_by_splits
from immsplit.suites import run_suite

from conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.slow

TITLES = {
    1: "Menger: flow lambda equals brute-force min cut",
    2: "Mader: admissible split at every eligible vertex",
    3: "cut identities on random triples",
    4: "splitter theorem, 3ec + internally 4ec class",
    5: "splitter theorem, even k = 4",
    6: "complete splits suffice on 4-regular pairs",
    7: "K5 to K33 corollary",
    8: "immersion search equals split oracle",
    9: "determinism of traces and reports",
}


@contextmanager
def criterion(number):
    start = time.perf_counter()
    info = {}
    ok = False
    try:
        yield info
        ok = True
    finally:
        secs = time.perf_counter() - start
        detail = ", ".join(f"{k}={v}" for k, v in info.items())
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {TITLES[number]}  [{secs:.1f}s; {detail}]"
        print(line)
        ACCEPTANCE_LINES.append(line)


def _suite(info, name, **kwargs):
    rep = run_suite(name, **kwargs)
    info.update(checked=rep.checked, failures=len(rep.failures))
    return rep


def test_criterion_1_menger():
    with criterion(1) as info:
        t = time.perf_counter()
        rep = _suite(info, "menger", n_max=8, m_max=16, samples=1000, seed=0)
        assert rep.ok and rep.checked >= 1000
        assert time.perf_counter() - t < 120


def test_criterion_2_mader():
    with criterion(2) as info:
        t = time.perf_counter()
        rep = _suite(info, "mader", n_max=6, m_max=10)
        assert rep.ok and rep.passed == rep.checked
        assert time.perf_counter() - t < 600


def test_criterion_3_identities():
    with criterion(3) as info:
        rep = _suite(info, "identities", samples=10_000, seed=0)
        assert rep.checked == 10_000 and rep.ok


def test_criterion_4_internal_four():
    with criterion(4) as info:
        t = time.perf_counter()
        rep = _suite(info, "i4", n_max=7, m_max=14)
        info["exceptions"] = len(rep.exceptions)
        assert rep.ok
        q3 = "8 12\n0 1\n0 2\n0 4\n1 3\n1 5\n2 3\n2 6\n3 7\n4 5\n4 6\n5 7\n6 7\n"
        assert sorted((e["graph"], e["h"]) for e in rep.exceptions) == [(q3, "K2^3"), (q3, "K4")]
        assert time.perf_counter() - t < 1800


def test_criterion_5_even_k():
    with criterion(5) as info:
        rep = _suite(info, "evenk4", n_max=7, m_max=14)
        assert rep.ok and rep.checked > 0
        (probe,) = rep.anomalies
        info["k2_probe"] = probe["outcome"]
        assert probe["probe"] == "K4,C3,evenk:2"


def test_criterion_6_complete_splits():
    with criterion(6) as info:
        rep = _suite(info, "dingkanno", n_max=7, m_max=14)
        assert rep.ok and rep.checked > 0


def test_criterion_7_corollary():
    with criterion(7) as info:
        rep = _suite(info, "corollary", n_max=7, m_max=14)
        info["K33"] = rep.counts["ImmersesK33"]
        info["octahedron"] = rep.counts["IsOctahedron"]
        assert rep.ok
        assert rep.counts["Violation"] == 0
        assert rep.counts["IsOctahedron"] == 1
        (exc,) = rep.exceptions
        assert exc["graph"].startswith("6 12\n")


def test_criterion_8_oracle_equivalence():
    with criterion(8) as info:
        gs = census(GraphFamilySpec(5, 8, "loopless"))
        hs = census(GraphFamilySpec(4, 8, "loopless"))
        pairs = mismatches = 0
        for g in gs:
            for h in hs:
                pairs += 1
                if (find_immersion(g, h) is not None) != immersion_oracle_by_splits(g, h):
                    mismatches += 1
        info.update(pairs=pairs, mismatches=mismatches)
        assert mismatches == 0


def _cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_criterion_9_determinism(capsys, tmp_path):
    with criterion(9) as info:
        runs = [
            ("reduce", "name:K7", "name:K5", "--mode", "evenk:4"),
            ("reduce", "name:K6", "name:K5", "--mode", "i4"),
            ("reduce", "name:octahedron", "name:K5", "--mode", "i4"),
            ("reduce", "name:W7", "name:K4", "--mode", "i4"),
        ]
        for i, argv in enumerate(runs):
            texts = []
            path = tmp_path / f"t{i}.json"
            for _ in range(2):
                code, out = _cli(capsys, *argv, "--trace", str(path))
                assert code == 0
                texts.append((out, path.read_bytes()))
            assert texts[0] == texts[1]
            assert json.loads(texts[0][0])["verdicts"]["reached"]
        suites = [
            ("verify", "--suite", "menger", "--seed", "5", "--samples", "200"),
            ("verify", "--suite", "i4", "--nmax", "6", "--mmax", "12"),
            ("verify", "--suite", "corollary", "--nmax", "6", "--mmax", "12"),
        ]
        for argv in suites:
            outs = [_cli(capsys, *argv, "--jobs", j)[1] for j in ("1", "1", "8")]
            assert outs[0] == outs[1]
            strip = [json.loads(o) for o in outs]
            for o in strip:
                o.pop("command")
            assert strip[0] == strip[2]
        info.update(traces=len(runs), reports=len(suites))
