"""Lucas sequences u_n(A, B): terms, primitive prime divisors, rank of apparition.

With alpha, beta the roots of x^2 - A x + B, u_n = (alpha^n - beta^n)/(alpha - beta),
so u_0 = 0, u_1 = 1, u_2 = A and u_n = A u_{n-1} - B u_{n-2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .arith import factorize, is_prime
from .errors import DegenerateRatio, DividesNorm, NotCoprime, ZeroEntry


@dataclass(frozen=True)
class LucasPair:
    """Trace A = alpha + beta and norm B = alpha * beta of a Lucas pair."""

    A: int
    B: int

    def __post_init__(self):
        if self.A == 0 or self.B == 0:
            raise ZeroEntry(f"Lucas pair needs non-zero entries, got ({self.A}, {self.B})")
        if gcd(self.A, self.B) != 1:
            raise NotCoprime(f"gcd({self.A}, {self.B}) = {gcd(self.A, self.B)}")
        a2 = self.A * self.A
        if a2 in (self.B, 2 * self.B, 3 * self.B, 4 * self.B):
            raise DegenerateRatio(
                f"A^2 = {a2} is 1, 2, 3 or 4 times B = {self.B}; alpha/beta is a root of unity"
            )

    @property
    def discriminant(self) -> int:
        """(alpha - beta)^2 = A^2 - 4B."""
        return self.A * self.A - 4 * self.B

    def negated(self) -> "LucasPair":
        return LucasPair(-self.A, self.B)


def make_lucas_pair(A: int, B: int) -> LucasPair:
    return LucasPair(A, B)


def lucas_sequence(A: int, B: int, n: int) -> list[int]:
    """[u_0, u_1, ..., u_n] for arbitrary integers A, B (no validity check)."""
    seq = [0, 1]
    for _ in range(n - 1):
        seq.append(A * seq[-1] - B * seq[-2])
    return seq[: n + 1]


def lucas_term(pair: LucasPair, n: int) -> int:
    if n < 1:
        raise ValueError(f"Lucas index must be >= 1, got {n}")
    prev, cur = 0, 1
    for _ in range(n - 1):
        prev, cur = cur, pair.A * cur - pair.B * prev
    return cur


@lru_cache(maxsize=4096)
def _prefix(A: int, B: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # terms u_0..u_n and running products D*u_1*...*u_j
    terms = lucas_sequence(A, B, n)
    prods = [A * A - 4 * B]
    for j in range(1, n + 1):
        prods.append(prods[-1] * terms[j])
    return tuple(terms), tuple(prods)


def _strip(value: int, against: int) -> int:
    value = abs(value)
    g = gcd(value, against)
    while g > 1:
        value //= g
        g = gcd(value, g)
    return value


def primitive_part(pair: LucasPair, n: int) -> int:
    """Largest divisor of |u_n| coprime to (A^2 - 4B) u_1 ... u_{n-1}.

    Its prime factors are exactly the primitive prime divisors of u_n.
    """
    if n < 2:
        raise ValueError("primitive divisors are defined for n >= 2")
    terms, prods = _prefix(pair.A, pair.B, n)
    return _strip(terms[n], abs(prods[n - 1]))


def has_primitive_divisor(pair: LucasPair, n: int) -> bool:
    return primitive_part(pair, n) > 1


def primitive_prime_divisors(pair: LucasPair, n: int) -> set[int]:
    """All primes dividing u_n but not (A^2 - 4B) u_1 ... u_{n-1}.

    Only the primitive part of u_n gets factored, which keeps this cheap for the
    small-value entries that matter; large primitive parts can still be slow.
    """
    return set(factorize(primitive_part(pair, n)))


def is_defective(pair: LucasPair, n: int) -> bool:
    return n > 2 and not has_primitive_divisor(pair, n)


def rank_of_apparition(pair: LucasPair, ell: int) -> int:
    """Smallest n >= 2 with ell | u_n, for an odd prime ell not dividing B."""
    if ell < 3 or not is_prime(ell):
        raise ValueError(f"rank of apparition needs an odd prime, got {ell}")
    if pair.B % ell == 0:
        raise DividesNorm(f"{ell} divides B = {pair.B}")
    prev, cur = 1, pair.A % ell  # u_1, u_2 mod ell
    n = 2
    while cur != 0:
        prev, cur = cur, (pair.A * cur - pair.B * prev) % ell
        n += 1
        if n > ell + 1:
            raise AssertionError(f"no apparition of {ell} up to index {ell + 1} for {pair}")
    if n > 2:
        if pair.discriminant % ell == 0:
            assert n == ell, (pair, ell, n)
        else:
            assert (ell - 1) % n == 0 or (ell + 1) % n == 0, (pair, ell, n)
    return n
