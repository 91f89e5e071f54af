import json

import pytest

from lucasieve.errors import UnsupportedWeight
from lucasieve.sieve import (
    EXCLUDED_BOUNDED,
    EXCLUDED_PROVED,
    LOCATED,
    UNRESOLVED,
    ResultCache,
    SieveTask,
    candidate_divisors,
    compare_with_published,
    replay_certificate,
    report,
    reproduce_published_lists,
    revalidate_solutions,
    run_sieve,
    sieve_report,
)


@pytest.mark.parametrize("ell,expected", [(29, [3, 5, 7, 29]), (7, [3, 7]), (3, [3]), (1, [])])
def test_candidate_divisors(ell, expected):
    assert candidate_divisors(ell) == expected


def test_prime_power_divisors():
    assert candidate_divisors(9, torsion=3) == [3]
    assert candidate_divisors(-125, torsion=5) == [5]


@pytest.mark.parametrize("kwargs", [dict(ell=4), dict(ell=15), dict(ell=7, r=7), dict(ell=7, y_bound=1)])
def test_task_validation(kwargs):
    with pytest.raises(ValueError):
        SieveTask(**kwargs)


def test_even_weight_unsupported():
    with pytest.raises(UnsupportedWeight):
        run_sieve(SieveTask(7, k=4, r=None))


def test_excluded_example():
    v = run_sieve(SieveTask(17, 2, 3))
    assert v.kind == EXCLUDED_PROVED
    ops = [s["op"] for s in v.certificate]
    assert ops[:2] == ["parity_reduction", "unit_exclusion"]
    assert "congruence_filter" in ops


def test_located_example_and_revalidation():
    task = SieveTask(29, 2, 3)
    doc = report(task, run_sieve(task))
    assert doc["verdict"] == LOCATED
    assert [(s["p"], s["a_abs"], s["d"]) for s in doc["solutions"]] == [(13, 2, 5)]
    assert revalidate_solutions(json.loads(json.dumps(doc)))
    assert set(doc) >= {"task", "verdict", "certificate", "solutions", "bounds", "catalog_version"}


def test_family_example():
    v = run_sieve(SieveTask(7, 2, 3))
    assert v.kind == LOCATED and not v.solutions
    fam = v.families[0]
    assert fam["p_residues_mod_r"] == [2]
    for inst in fam["instances"]:
        assert inst["p"] % 3 == 2


def test_minus_691_r5():
    assert run_sieve(SieveTask(-691, 2, 5)).kind == EXCLUDED_PROVED


@pytest.mark.parametrize("ell,r", [(29, 3), (17, 3), (-7, 3), (5, 3), (1, 5), (9, 3)])
def test_certificates_replay(ell, r):
    task = SieveTask(ell, 2, r)
    doc = json.loads(json.dumps(report(task, run_sieve(task))))
    assert replay_certificate(doc) == []


def test_tampered_certificate_detected():
    task = SieveTask(17, 2, 3)
    doc = json.loads(json.dumps(report(task, run_sieve(task))))
    step = next(s for s in doc["certificate"] if s["op"] == "congruence_filter")
    step["result"]["residues"] = [1, 2]
    assert replay_certificate(doc)


def test_deterministic_reports():
    a = report(SieveTask(-19, 2, 3), run_sieve(SieveTask(-19, 2, 3)))
    b = report(SieveTask(-19, 2, 3), run_sieve(SieveTask(-19, 2, 3)))
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_bound_monotonicity():
    small = run_sieve(SieveTask(-31, 2, 3, y_bound=3, a_bound=4))
    large = run_sieve(SieveTask(-31, 2, 3))
    keys = lambda v: {(s["p"], s["a_abs"], s["d"]) for s in v.solutions}
    assert keys(small) <= keys(large)
    if small.kind in (EXCLUDED_PROVED, EXCLUDED_BOUNDED) and large.kind == LOCATED:
        assert keys(large) - keys(small)


def test_odd_weight_and_weight_one():
    v = run_sieve(SieveTask(7, k=3))
    assert v.kind == LOCATED
    assert all(s["k"] == 3 for s in v.solutions)
    assert run_sieve(SieveTask(1, k=5)).kind == EXCLUDED_PROVED
    assert run_sieve(SieveTask(7, k=1)).kind == UNRESOLVED


def test_composite_divisors_pruned_in_certificate():
    v = run_sieve(SieveTask(3, k=3))  # defective target: all odd divisors, none composite here
    assert v.kind in (LOCATED, EXCLUDED_PROVED, EXCLUDED_BOUNDED)
    v = run_sieve(SieveTask(-7, k=3))
    assert all(e["d"] in (3, 7) for e in v.per_divisor)


def test_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path / "c")
    task = SieveTask(29, 2, 3)
    doc = sieve_report(task, cache)
    assert len(cache.entries()) == 1
    assert sieve_report(task, cache) == doc
    # a corrupted entry is recomputed rather than trusted
    path = cache.path(task)
    bad = json.loads(path.read_text())
    bad["solutions"][0]["a_abs"] = 4
    path.write_text(json.dumps(bad))
    assert sieve_report(task, cache) == doc
    assert cache.clear() == 1


def test_cache_key_depends_on_bounds(tmp_path):
    cache = ResultCache(tmp_path)
    assert cache.key(SieveTask(29, 2, 3)) != cache.key(SieveTask(29, 2, 3, y_bound=100))


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("LUCASIEVE_CACHE_DIR", str(tmp_path / "env"))
    assert ResultCache().directory == tmp_path / "env"


def test_batch_subset():
    rep = reproduce_published_lists(targets=[17, 29, 7, -79], jobs=1)
    status = {(e["ell"], e["r"]): e["status"] for e in rep["entries"]}
    assert status[(17, 3)] == "match"
    assert status[(29, 3)] == "match"
    assert status[(7, 3)] == "match"
    assert status[(-79, 3)] == "expected_tension"
    assert not rep["discrepancies"]


def test_compare_flags_wrong_verdict():
    task = SieveTask(17, 2, 3)
    doc = json.loads(json.dumps(report(task, run_sieve(task))))
    doc["verdict"] = LOCATED
    assert compare_with_published(doc)["status"] == "discrepancy"


@pytest.mark.slow
def test_full_batch_has_no_discrepancies():
    rep = reproduce_published_lists(jobs=1)
    assert len(rep["entries"]) == 2 * (2 * 24 + 3)  # +-p for 24 odd primes, +-1, -691
    assert rep["discrepancies"] == []
    assert [(e["ell"], e["r"]) for e in rep["tensions"]] == [(-79, 3)]
