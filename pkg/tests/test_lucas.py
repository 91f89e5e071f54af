import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lucasieve.arith import factorize, is_prime, primes_up_to
from lucasieve.errors import DegenerateRatio, DividesNorm, NotCoprime, ZeroEntry
from lucasieve.lucas import (
    LucasPair,
    has_primitive_divisor,
    is_defective,
    lucas_sequence,
    lucas_term,
    primitive_part,
    primitive_prime_divisors,
    rank_of_apparition,
)


def _valid(A, B):
    try:
        return LucasPair(A, B)
    except ValueError:
        return None


pairs = st.builds(_valid, st.integers(-30, 30), st.integers(-60, 60)).filter(lambda p: p is not None)


def naive_primitive_primes(pair, n):
    seq = [lucas_term(pair, j) for j in range(1, n + 1)]
    older = pair.discriminant
    for u in seq[:-1]:
        older *= u
    return {q for q in factorize(abs(seq[-1])) if older % q}


def test_first_terms():
    assert lucas_sequence(1, -1, 10) == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    pair = LucasPair(1, 2)
    assert [lucas_term(pair, n) for n in (5, 7)] == [-1, 7]


def test_u30_of_1_2_is_defective():
    pair = LucasPair(1, 2)
    assert abs(lucas_term(pair, 30)) == 24475
    assert is_defective(pair, 30)
    assert primitive_prime_divisors(pair, 30) == set()


@pytest.mark.parametrize("A,B,err", [(0, 3, ZeroEntry), (3, 0, ZeroEntry), (6, 9, NotCoprime),
                                     (1, 1, DegenerateRatio), (2, 1, DegenerateRatio),
                                     (-1, 1, DegenerateRatio), (-2, 1, DegenerateRatio)])
def test_invalid_pairs(A, B, err):
    with pytest.raises(err):
        LucasPair(A, B)


@given(pairs, st.integers(2, 40))
def test_cassini_identity(pair, n):
    u = lucas_sequence(pair.A, pair.B, n + 1)
    assert u[n] ** 2 - u[n - 1] * u[n + 1] == pair.B ** (n - 1)


@given(pairs, st.integers(1, 12), st.integers(1, 6))
def test_divisibility_sequence(pair, m, t):
    assert lucas_term(pair, m * t) % lucas_term(pair, m) == 0


@given(pairs, st.sampled_from([q for q in primes_up_to(100) if q > 2]), st.integers(1, 60))
def test_rank_of_apparition_law(pair, ell, n):
    assume(pair.B % ell)
    rank = rank_of_apparition(pair, ell)
    assert (lucas_term(pair, n) % ell == 0) == (n % rank == 0)


def test_rank_trichotomy_and_norm_error():
    pair = LucasPair(1, -1)  # Fibonacci, disc 5
    assert rank_of_apparition(pair, 5) == 5
    assert rank_of_apparition(pair, 11) == 10
    assert rank_of_apparition(pair, 7) == 8
    with pytest.raises(DividesNorm):
        rank_of_apparition(LucasPair(2, 3), 3)


@settings(max_examples=60)
@given(pairs, st.integers(3, 24))
def test_primitive_part_matches_factoring(pair, n):
    assert primitive_prime_divisors(pair, n) == naive_primitive_primes(pair, n)
    part = primitive_part(pair, n)
    assert has_primitive_divisor(pair, n) == (part > 1)


def test_primitive_divisors_are_prime():
    pair = LucasPair(3, -7)
    for q in primitive_prime_divisors(pair, 17):
        assert is_prime(q)
