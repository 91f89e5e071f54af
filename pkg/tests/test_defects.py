import time

import pytest

from lucasieve.arith import primes_up_to
from lucasieve.defects import (
    catalog_version,
    defective_matches,
    is_defect_free_target,
    odd_defective_values,
    parametric_rows,
    sporadic_rows,
    verify_tables,
)
from lucasieve.lucas import LucasPair


def test_tables_verify_quickly():
    t0 = time.perf_counter()
    report = verify_tables()
    assert report.ok
    assert report.rows_checked == len(sporadic_rows()) == 38
    assert time.perf_counter() - t0 < 1.0
    assert report.catalog_version == catalog_version()


def test_parametric_rows_present():
    ids = {row["family_id"] for row in parametric_rows()}
    assert {"T3R1", "T3R2", "T4R1", "T4R2"} <= ids


def test_known_sporadic_match():
    res = defective_matches(5, 2)
    hits = [(i.A, i.B, m.n) for m in res.feasible_matches for i in m.instances]
    assert (2, 11, 5) in hits or (-2, 11, 5) in hits


def test_plus_minus_three_family():
    for value in (3, -3):
        fams = {m.family for m in defective_matches(value, 2).feasible_matches}
        assert "T3R2" in fams


def test_odd_weight_values_without_matches():
    for value in (3, -3, 9, -27, 81, 7, -7, 5):
        assert not defective_matches(value, 3).feasible_matches


@pytest.mark.parametrize("ell,free", [(29, True), (-3, False), (5, False), (7, True), (1, False)])
def test_defect_free_targets(ell, free):
    assert is_defect_free_target(ell, 2).defect_free is free


def test_catalog_complete_on_small_pairs():
    """Brute force over even A, prime B: every odd defective term is in the catalog."""
    checked = 0
    for A in range(-12, 13, 2):
        for B in primes_up_to(200):
            try:
                LucasPair(A, B)
            except ValueError:
                continue
            for n, u in odd_defective_values(A, B, 30):
                checked += 1
                matches = [m for m in defective_matches(u, 2).feasible_matches if m.n == n]
                assert any(m.unbounded or any((i.A, i.B) == (A, B) for i in m.instances) for m in matches), \
                    (A, B, n, u)
    assert checked > 0
