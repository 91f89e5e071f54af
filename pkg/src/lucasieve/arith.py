"""Small integer helpers: primality, factorization, exact roots.

Primality and factorization are delegated to sympy (deterministic Miller-Rabin
below 2**64, BPSW above; trial division followed by Pollard rho/p-1 for
factoring). Everything else here is exact integer arithmetic.
"""
from __future__ import annotations

from functools import reduce
from math import gcd, isqrt

from sympy import factorint as _factorint
from sympy import isprime as _isprime
from sympy.ntheory import n_order


def is_prime(n: int) -> bool:
    return n > 1 and bool(_isprime(n))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; empty for 0 and +-1."""
    n = abs(n)
    if n < 2:
        return {}
    return {int(p): int(e) for p, e in _factorint(n).items()}


def prime_divisors(n: int) -> set[int]:
    return set(factorize(n))


def odd_prime_divisors(n: int) -> list[int]:
    return sorted(p for p in factorize(n) if p != 2)


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def odd_divisors(n: int, minimum: int = 1) -> list[int]:
    return [d for d in divisors(n) if d % 2 == 1 and d >= minimum]


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, exact."""
    if n < 0:
        raise ValueError("iroot needs n >= 0")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def iroot_ceil(n: int, k: int) -> int:
    r = iroot(n, k)
    return r if r**k == n else r + 1


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def prime_power_base(n: int, e: int) -> int | None:
    """Return prime p with p**e == n, else None."""
    if n < 2:
        return None
    p = iroot(n, e)
    if p**e == n and is_prime(p):
        return p
    return None


def multiplicative_order(a: int, r: int) -> int:
    return int(n_order(a % r, r))


def lcm(*values: int) -> int:
    return reduce(lambda x, y: x * y // gcd(x, y), values, 1)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(range(i * i, n + 1, i))
    return [i for i, flag in enumerate(sieve) if flag]
