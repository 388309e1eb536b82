import json

import pytest

from immsplit.suites import SUITES, _random_shapes, run_suite


@pytest.mark.parametrize(
    "name, kwargs",
    [
        ("menger", {"samples": 100}),
        ("identities", {"samples": 500}),
        ("mader", {"n_max": 5, "m_max": 8}),
        ("i4", {"n_max": 5, "m_max": 10}),
        ("evenk4", {"n_max": 5, "m_max": 10}),
        ("dingkanno", {"n_max": 6, "m_max": 12}),
        ("corollary", {"n_max": 6, "m_max": 12}),
    ],
)
def test_small_suites_pass(name, kwargs):
    rep = run_suite(name, **kwargs)
    assert rep.ok, rep.failures[:3]
    assert rep.checked > 0 and rep.passed == rep.checked


def test_i4_suite_lists_cube_exceptions():
    rep = run_suite("i4", n_max=4, m_max=8)
    assert sorted(e["h"] for e in rep.exceptions) == ["K2^3", "K4"]


def test_evenk_suite_records_k2_probe():
    rep = run_suite("evenk4", n_max=3, m_max=8)
    assert [a["probe"] for a in rep.anomalies] == ["K4,C3,evenk:2"]
    assert rep.anomalies[0]["outcome"] in ("found", "none")


def test_corollary_octahedron_is_unique_exception():
    rep = run_suite("corollary", n_max=6, m_max=12)
    assert rep.counts["IsOctahedron"] == 1 and rep.counts["Violation"] == 0
    assert len(rep.exceptions) == 1


def test_jobs_do_not_change_output():
    a = run_suite("mader", n_max=4, m_max=6, jobs=1).to_json()
    b = run_suite("mader", n_max=4, m_max=6, jobs=3).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_seed_drives_random_inputs():
    assert _random_shapes(1, 50, 8, 16, True) == _random_shapes(1, 50, 8, 16, True)
    assert _random_shapes(1, 50, 8, 16, True) != _random_shapes(2, 50, 8, 16, True)
    for n, m, _, x, y in _random_shapes(3, 500, 8, 16, True):
        assert 2 <= n <= 8 and 0 <= m <= 16
        assert 0 < x < 1 << n and 0 < y < 1 << n and x != y


def test_unknown_suite():
    assert "menger" in SUITES
    with pytest.raises(ValueError):
        run_suite("kuratowski")
