import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lucasieve.errors import DegreeTooSmall
from lucasieve.hecke import FrobeniusPair, coeff_prime_power, deligne_ok
from lucasieve.arith import primes_up_to
from lucasieve.thue import (
    root_enclosures,
    solve_d3,
    solve_d5_weight2,
    solve_higher,
    solve_per_trace,
    thue_poly,
    weight1_residual,
)

ODD_PRIMES = [p for p in primes_up_to(300) if p > 2]


def series_oracle(m_max):
    """Coefficients of S^m in (1 + X S) / ((1 + X S)^2 - Y S)."""
    X, Y, S = sympy.symbols("X Y S")
    expr = (1 + X * S) / ((1 + X * S) ** 2 - Y * S)
    ser = sympy.series(expr, S, 0, m_max + 1).removeO()
    return X, Y, [sympy.Poly(sympy.expand(ser.coeff(S, m)), X, Y) for m in range(m_max + 1)]


def test_recurrence_matches_series_oracle():
    X, Y, polys = series_oracle(10)
    for m in range(11):
        ours = {(i, j): c for (i, j), c in thue_poly(m).coefficients.items() if c}
        theirs = {mono: int(c) for mono, c in polys[m].terms()}
        assert ours == theirs, m


def test_small_forms():
    assert str(thue_poly(1)) == "Y - X"
    assert str(thue_poly(3)) == "Y^3 - 5*X*Y^2 + 6*X^2*Y - X^3"


@settings(max_examples=100)
@given(st.sampled_from(ODD_PRIMES), st.sampled_from([2, 3, 5, 7]), st.sampled_from([-1, 0, 1]),
       st.integers(0, 400), st.integers(1, 8))
def test_identity_with_hecke(p, k, chi, a_half, m):
    if k == 2:
        chi = 1
    a = 2 * a_half
    if chi and not deligne_ok(p, k, a):
        a = 0
    fp = FrobeniusPair(p, k, chi, a)
    assert thue_poly(m)(chi * p ** (k - 1), a * a) == coeff_prime_power(fp, 2 * m)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_root_enclosures_contain_cosine_roots(m):
    d = 2 * m + 1
    encl = root_enclosures(m)
    assert len(encl) == m
    expected = sorted(1 / (4 * math.cos(j * math.pi / d) ** 2) for j in range(1, m + 1))
    for (lo, hi), t in zip(encl, expected):
        assert lo <= Fraction(t) + Fraction(1, 10**9) and Fraction(t) - Fraction(1, 10**9) <= hi
        assert lo > Fraction(1, 4)


def test_d3_family_weight2():
    out = solve_d3(7)
    assert out.kind == "family"
    for inst in out.family["instances"]:
        assert inst["p"] == inst["a_abs"] ** 2 - 7


def test_d3_negative_target_includes_zero_trace():
    out = solve_d3(-7)
    assert any(inst["a_abs"] == 0 and inst["p"] == 7 for inst in out.family["instances"])


@pytest.mark.parametrize("ell,chi", [(7, 1), (-7, -1), (5, 0)])
def test_d3_odd_weight(ell, chi):
    out = solve_d3(ell, 3, chi)
    for s in out.solutions:
        assert FrobeniusPair(s.p, 3, chi, s.a_abs).chi_p == chi and s.revalidate()
    if chi == 0:
        assert out.kind == "excluded_proved"


@pytest.mark.parametrize("ell,expected", [(29, {(13, 2)}), (41, {(5, 4), (43, 4)}), (-19, {(5, 2), (7, 2)}),
                                          (-31, {(7, 4), (41, 4)}), (-79, {(167, 8)})])
def test_quartic_solutions(ell, expected):
    out = solve_d5_weight2(ell)
    assert {(s.p, s.a_abs) for s in out.solutions} == expected
    assert all(s.revalidate() for s in out.solutions)
    per_trace = solve_per_trace(ell, 5, a_bound=2000)
    assert {(s.p, s.a_abs) for s in per_trace.solutions} == expected


def test_higher_degree_guard():
    with pytest.raises(DegreeTooSmall):
        solve_higher(29, 5)
    assert solve_higher(29, 7, a_bound=500).kind == "excluded_bounded"


def test_weight1_is_unresolved():
    out = weight1_residual(7, 1)
    assert out.kind == "unresolved"
    assert "y^2" in out.family["equation"]
