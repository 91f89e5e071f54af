"""Local arithmetic of newform coefficients.

For a prime p not dividing the level, the coefficients a(p^m) follow the Hecke
recurrence a(p^m) = a(p) a(p^{m-1}) - chi(p) p^{k-1} a(p^{m-2}), which is the
Lucas sequence of the Frobenius polynomial x^2 - a(p) x + chi(p) p^{k-1}
shifted by one: a(p^m) = u_{m+1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .arith import factorize, is_prime
from .errors import DuplicatePrime, InvalidFrobeniusPair, NotLevelPrime
from .lucas import LucasPair


def deligne_ok(p: int, k: int, a_p: int) -> bool:
    """|a_p| <= 2 p^((k-1)/2), compared exactly as a_p^2 <= 4 p^(k-1)."""
    return a_p * a_p <= 4 * p ** (k - 1)


@dataclass(frozen=True)
class FrobeniusPair:
    p: int
    k: int
    chi_p: int
    a_p: int
    mod2_trivial: bool = True

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise InvalidFrobeniusPair(f"p must be an odd prime, got {self.p}")
        if self.k < 1 or (self.k != 2 and self.k % 2 == 0):
            raise InvalidFrobeniusPair(f"weight must be 2 or odd, got {self.k}")
        if self.chi_p not in (-1, 0, 1):
            raise InvalidFrobeniusPair(f"chi(p) must be -1, 0 or 1, got {self.chi_p}")
        if self.k == 2 and self.chi_p != 1:
            raise InvalidFrobeniusPair("weight 2 has trivial character, chi(p) = 1")
        if self.chi_p != 0 and not deligne_ok(self.p, self.k, self.a_p):
            raise InvalidFrobeniusPair(
                f"a_p = {self.a_p} violates Deligne's bound at p = {self.p}, k = {self.k}"
            )
        if self.mod2_trivial and self.a_p % 2:
            raise InvalidFrobeniusPair(f"mod-2-trivial form needs even a_p, got {self.a_p}")

    @property
    def norm(self) -> int:
        """B = chi(p) p^(k-1), the constant term of the Frobenius polynomial."""
        return self.chi_p * self.p ** (self.k - 1)

    def frobenius_polynomial(self) -> tuple[int, int, int]:
        """Coefficients (1, -a_p, B) of x^2 - a_p x + B."""
        return (1, -self.a_p, self.norm)

    def is_lucas(self) -> bool:
        A, B = self.a_p, self.norm
        if A == 0 or B == 0 or gcd(A, B) != 1:
            return False
        return A * A not in (B, 2 * B, 3 * B, 4 * B)

    def as_lucas_pair(self) -> LucasPair:
        return LucasPair(self.a_p, self.norm)


def coeff_prime_power(fp: FrobeniusPair, m: int) -> int:
    """a(p^m) by the Hecke recurrence; a(p^0) = 1."""
    if m < 0:
        raise ValueError("exponent must be >= 0")
    prev, cur = 0, 1  # a(p^-1) = 0 makes the first step give a(p) = a_p
    B = fp.norm
    for _ in range(m):
        prev, cur = cur, fp.a_p * cur - B * prev
    return cur


def coeff_multiplicative(locals_: list[tuple[FrobeniusPair, int]]) -> int:
    seen = set()
    value = 1
    for fp, e in locals_:
        if fp.p in seen:
            raise DuplicatePrime(f"prime {fp.p} appears twice")
        seen.add(fp.p)
        value *= coeff_prime_power(fp, e)
    return value


def parity_shape(n: int, mod2_trivial: bool = True) -> str:
    """'odd' iff n is an odd perfect square, for n coprime to 2N."""
    if not mod2_trivial:
        raise ValueError("parity shape only holds for mod-2-trivial forms")
    if n < 1:
        raise ValueError("n must be positive")
    r = isqrt(n)
    return "odd" if n % 2 == 1 and r * r == n else "even"


@dataclass(frozen=True)
class LevelCoefficient:
    """Possible values of a(p^m) at a prime p dividing the level."""

    p: int
    m: int
    values: tuple[int, ...]
    rule: str


def level_coeff(
    p: int,
    k: int,
    m: int,
    chi_reducible_mod_N_over_p: bool,
    ord_p_N: int,
) -> LevelCoefficient:
    """Coefficient a(p^m) = a(p)^m at a bad prime p.

    Weight 2: a(p) = +-1 when p exactly divides N, else 0. Odd weight: a(p) = 0
    when the character is defined modulo N/p (integrality forbids the other
    option), otherwise |a(p)| = p^((k-1)/2).
    """
    if ord_p_N < 1 or not is_prime(p):
        raise NotLevelPrime(f"p = {p} with ord_p(N) = {ord_p_N} is not a level prime")
    if m < 0:
        raise ValueError("exponent must be >= 0")
    if m == 0:
        return LevelCoefficient(p, 0, (1,), "a(1) = 1")
    if k == 2:
        if ord_p_N == 1:
            vals = (-1, 1) if m % 2 else (1,)
            return LevelCoefficient(p, m, vals, "(+-1)^m, multiplicative reduction")
        return LevelCoefficient(p, m, (0,), "0, additive reduction")
    if k % 2 == 0:
        raise ValueError(f"even weight {k} > 2 is not supported")
    if chi_reducible_mod_N_over_p:
        return LevelCoefficient(p, m, (0,), "0, a(p)^2 = chi_1(p) p^(k-2) has no integer root")
    size = p ** (m * (k - 1) // 2)
    vals = (-size, size) if m % 2 else (size,)
    return LevelCoefficient(p, m, vals, "(+-1)^m p^(m(k-1)/2)")


@dataclass
class CoefficientSeries:
    """a(n) for 1 <= n <= n_max (missing n allowed, e.g. n sharing a factor with 2N)."""

    n_max: int
    values: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __contains__(self, n: int) -> bool:
        return n in self.values

    def multiplicativity_failures(self, limit: int | None = None) -> list[tuple[int, int]]:
        """Pairs (m, n), coprime, m, n > 1, where a(mn) != a(m) a(n)."""
        bad = []
        for n, value in sorted(self.values.items()):
            if n < 6:
                continue
            fac = factorize(n)
            if len(fac) < 2:
                continue
            p, e = next(iter(sorted(fac.items())))
            q = p**e
            rest = n // q
            if q in self.values and rest in self.values and self.values[q] * self.values[rest] != value:
                bad.append((q, rest))
                if limit is not None and len(bad) >= limit:
                    break
        return bad
