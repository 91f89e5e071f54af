import random

import pytest

from lucasieve import curves
from lucasieve.arith import primes_up_to
from lucasieve.congruences import geometric_residue
from lucasieve.curves import (
    CurveSpec,
    curve_series,
    ingest_coefficients,
    point_count,
    point_order,
    rational_two_torsion,
    series_scan,
    torsion_probe,
    trace_of_frobenius,
    write_coefficients,
)
from lucasieve.errors import BadReduction, ConsistencyFailure, MalformedFile, ScanViolation, TorsionHypothesisFails
from lucasieve.hecke import FrobeniusPair, coeff_prime_power

Z6 = CurveSpec(0, -2, -2, 0, 0)
Z10 = CurveSpec(-5, -24, -24, 0, 0)
SAMPLE = primes_up_to(200)


def brute_count(curve, p):
    a1, a2, a3, a4, a6 = curve.coefficients
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0:
                n += 1
    return n


def test_small_count():
    assert point_count(CurveSpec(0, 0, 0, 0, 1), 5) == 6
    assert trace_of_frobenius(CurveSpec(0, 0, 0, 0, 1), 5) == 0


@pytest.mark.parametrize("p", [3, 7, 13, 31, 61])
def test_count_matches_brute_force(p):
    for curve in (Z6, Z10, CurveSpec(1, -1, 1, -3, 5)):
        if curve.discriminant % p:
            assert point_count(curve, p) == brute_count(curve, p)


def test_bad_reduction():
    with pytest.raises(BadReduction):
        point_count(Z6, 5)


def test_hasse_bound_random():
    rng = random.Random(7)
    primes = [p for p in primes_up_to(10**4) if p > 2]
    checked = 0
    while checked < 200:
        coeffs = [rng.randint(-20, 20) for _ in range(5)]
        try:
            curve = CurveSpec(*coeffs)
        except ValueError:
            continue
        p = rng.choice(primes)
        if curve.discriminant % p == 0:
            continue
        a = trace_of_frobenius(curve, p)
        assert a * a <= 4 * p
        checked += 1


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        CurveSpec(0, 0, 0, 0, 0)


@pytest.mark.parametrize("curve,r", [(Z6, 3), (Z10, 5)])
def test_torsion_probe(curve, r):
    cert = torsion_probe(curve, SAMPLE, r)
    assert cert.order_gcd % (2 * r) == 0
    assert cert.two_torsion
    assert cert.torsion_points_found == cert.order_gcd


def test_torsion_probe_rejects_wrong_r():
    with pytest.raises(TorsionHypothesisFails):
        torsion_probe(Z6, SAMPLE, 5)


def test_torsion_probe_rejects_non_mazur_gcd(monkeypatch):
    monkeypatch.setattr(curves, "point_count", lambda curve, p: 35)
    with pytest.raises(TorsionHypothesisFails, match="Mazur"):
        torsion_probe(Z6, SAMPLE, 3)


def test_two_torsion_exact():
    for P in rational_two_torsion(Z6) + rational_two_torsion(Z10):
        curve = Z6 if P in rational_two_torsion(Z6) else Z10
        assert point_order(curve, P) == 2


@pytest.mark.parametrize("curve,m", [(Z6, 6), (Z10, 10)])
def test_counts_divisible_by_torsion(curve, m):
    bad = curve.bad_primes()
    for p in primes_up_to(500):
        if p > 2 and p not in bad:
            assert point_count(curve, p) % m == 0


def test_series_satisfies_hecke():
    s = curve_series(Z6, 3000)
    for p in (7, 11, 13, 17):
        fp = FrobeniusPair(p, 2, 1, s[p])
        e = 1
        while p ** e <= 3000:
            assert s[p**e] == coeff_prime_power(fp, e)
            e += 1
    assert s[7 * 11] == s[7] * s[11]


def test_z10_needs_full_pair_list_for_five():
    """p = 2 mod 5 with d = 4 gives a(p^3) = 0 mod 5 on a curve with a point of order 5."""
    s = curve_series(Z10, 20000)
    seen = []
    for p in primes_up_to(27):
        if p % 5 == 2 and p**3 in s:
            assert s[p**3] % 5 == 0 == geometric_residue(p, 4, 5)
            seen.append(p)
    assert seen


def test_scan_small_clean():
    rep = series_scan(Z6, 5000, (5, 17, -7), 3)
    assert rep.clean and rep.coefficients_checked > 1000


def test_scan_violation_raised():
    with pytest.raises(ScanViolation) as info:
        series_scan(Z6, 500, (-2, 0, 2, 4, -4), 3)
    assert info.value.report.hits


def test_ingest_roundtrip(tmp_path):
    s = curve_series(Z6, 300)
    path = tmp_path / "coeffs.txt"
    write_coefficients(s, path)
    back = ingest_coefficients(path)
    assert back.values == s.values


def test_ingest_accepts_header_and_comments():
    text = "n, a(n)\n1, 1  # first\n2, -1\n3, 0\n4, 1\n# done\n"
    s = ingest_coefficients(text)
    assert s[2] == -1 and s[4] == 1


@pytest.mark.parametrize("text,err", [
    ("1 1\n2 -1\n3 2\n6 1\n", ConsistencyFailure),
    ("1 1\n5 6\n", ConsistencyFailure),
    ("1 2\n", ConsistencyFailure),
    ("1 1\n2 x\n", MalformedFile),
    ("1 1\n1 1\n", MalformedFile),
    ("1 1 1\n", MalformedFile),
    ("# nothing\n", MalformedFile),
])
def test_ingest_errors(text, err):
    with pytest.raises(err):
        ingest_coefficients(text)
