import pytest
from hypothesis import given
from hypothesis import strategies as st

from lucasieve.arith import primes_up_to
from lucasieve.errors import DuplicatePrime, InvalidFrobeniusPair, NotLevelPrime
from lucasieve.hecke import (
    CoefficientSeries,
    FrobeniusPair,
    coeff_multiplicative,
    coeff_prime_power,
    deligne_ok,
    level_coeff,
    parity_shape,
)
from lucasieve.lucas import lucas_sequence

ODD_PRIMES = [p for p in primes_up_to(400) if p > 2]


@st.composite
def frobenius_pairs(draw, chi_nonzero=False):
    p = draw(st.sampled_from(ODD_PRIMES))
    k = draw(st.sampled_from([2, 3, 5, 7]))
    chi = 1 if k == 2 else draw(st.sampled_from([-1, 1] if chi_nonzero else [-1, 0, 1]))
    bound = int((4 * p ** (k - 1)) ** 0.5)
    a = draw(st.integers(-bound, bound).map(lambda x: x - x % 2))
    if chi and not deligne_ok(p, k, a):
        a = 0
    return FrobeniusPair(p, k, chi, a)


@given(frobenius_pairs(), st.integers(0, 15))
def test_prime_power_is_shifted_lucas(fp, m):
    u = lucas_sequence(fp.a_p, fp.norm, m + 1)
    assert coeff_prime_power(fp, m) == u[m + 1]


@given(frobenius_pairs(chi_nonzero=True), st.integers(0, 15))
def test_parity_of_prime_powers(fp, m):
    assert (coeff_prime_power(fp, m) % 2 == 1) == (m % 2 == 0)


@given(st.sampled_from(ODD_PRIMES), st.sampled_from([2, 3, 5]), st.integers(0, 12))
def test_zero_trace_closed_form(p, k, m):
    chi = 1
    fp = FrobeniusPair(p, k, chi, 0)
    expected = 0 if m % 2 else (-fp.norm) ** (m // 2)
    assert coeff_prime_power(fp, m) == expected


def test_parity_shape():
    assert [parity_shape(n) for n in (1, 9, 25, 15, 4, 49)] == ["odd", "odd", "odd", "even", "even", "odd"]


@pytest.mark.parametrize("args", [(2, 2, 1, 0), (9, 2, 1, 0), (5, 4, 1, 0), (5, 2, -1, 0),
                                  (5, 2, 1, 6), (5, 2, 1, 3), (7, 3, 2, 0)])
def test_invalid_frobenius(args):
    with pytest.raises(InvalidFrobeniusPair):
        FrobeniusPair(*args)


def test_deligne_boundary():
    assert deligne_ok(5, 2, 4)
    assert not deligne_ok(5, 2, 6)
    FrobeniusPair(5, 3, 0, 20)  # chi = 0 skips the bound


def test_multiplicative():
    a = FrobeniusPair(3, 2, 1, 2)
    b = FrobeniusPair(5, 2, 1, -2)
    assert coeff_multiplicative([(a, 2), (b, 1)]) == coeff_prime_power(a, 2) * -2
    with pytest.raises(DuplicatePrime):
        coeff_multiplicative([(a, 1), (FrobeniusPair(3, 2, 1, 0), 1)])


def test_level_coefficients():
    assert level_coeff(11, 2, 3, False, 1).values == (-1, 1)
    assert level_coeff(11, 2, 2, False, 1).values == (1,)
    assert level_coeff(3, 2, 1, False, 2).values == (0,)
    assert level_coeff(7, 3, 1, True, 1).values == (0,)
    assert level_coeff(7, 5, 3, False, 1).values == (-7**6, 7**6)
    with pytest.raises(NotLevelPrime):
        level_coeff(7, 2, 1, False, 0)


def test_series_multiplicativity_check():
    s = CoefficientSeries(6, {1: 1, 2: -1, 3: 0, 6: 1})
    assert s.multiplicativity_failures() == [(2, 3)]
