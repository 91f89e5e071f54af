"""Thue forms F_{2m}(X, Y) and exact solvers for a(p^{d-1}) = l.

The forms come from 1/(1 - sqrt(Y) T + X T^2) = sum F_n(X, Y) T^n. Their
even-index members are integral and homogeneous of degree m, with

    F_{2m}(chi(p) p^{k-1}, a(p)^2) = a(p^{2m}).

For a fixed trace a the equation F_{2m}(X, a^2) = l is univariate in X and is
solved exactly: F_{2m}(X, 1) = (-1)^m prod (X - t_j) with m real roots t_j > 1/4,
so every solution satisfies |X - t_j a^2| <= |l|^(1/m) for some j. Root
enclosures are exact rationals, so the candidate windows are complete and no
floating point is involved. Incompleteness lives only in the trace bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, isqrt, ceil

import sympy

from .arith import iroot_ceil, is_prime, is_square, prime_power_base
from .errors import DegreeTooSmall
from .hecke import FrobeniusPair, coeff_prime_power, deligne_ok

DEFAULT_Y_BOUND = 10**6
DEFAULT_A_BOUND = 10**4


@dataclass(frozen=True)
class EvenThuePoly:
    """F_{2m} as {(i, j): c} meaning c X^i Y^j, homogeneous of degree m."""

    m: int
    coefficients: dict

    def __call__(self, X: int, Y: int) -> int:
        return sum(c * X**i * Y**j for (i, j), c in self.coefficients.items())

    def in_x(self, Y: int) -> list[int]:
        """Coefficients c_0..c_m of F_{2m}(X, Y) as a polynomial in X."""
        out = [0] * (self.m + 1)
        for (i, j), c in self.coefficients.items():
            out[i] += c * Y**j
        return out

    def __str__(self):
        terms = []
        for (i, j), c in sorted(self.coefficients.items(), key=lambda t: t[0][0]):
            mono = "*".join(s for s in (f"X^{i}" if i > 1 else "X" if i else "",
                                        f"Y^{j}" if j > 1 else "Y" if j else "") if s)
            if not mono:
                terms.append(str(c))
            elif abs(c) == 1:
                terms.append(("-" if c < 0 else "") + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _poly_mul_add(p, q, a, b):
    out = {}
    for src, scale in ((p, a), (q, b)):
        for (i, j), c in src.items():
            for (di, dj), s in scale.items():
                key = (i + di, j + dj)
                out[key] = out.get(key, 0) + c * s
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def thue_poly(m: int) -> EvenThuePoly:
    """F_{2m} via F_{2m} = (Y - 2X) F_{2m-2} - X^2 F_{2m-4}, F_0 = 1, F_2 = Y - X."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return EvenThuePoly(0, {(0, 0): 1})
    prev, cur = {(0, 0): 1}, {(0, 1): 1, (1, 0): -1}
    for _ in range(m - 1):
        prev, cur = cur, _poly_mul_add(cur, prev, {(0, 1): 1, (1, 0): -2}, {(2, 0): -1})
    return EvenThuePoly(m, cur)


@lru_cache(maxsize=None)
def root_enclosures(m: int, eps_exponent: int = 80) -> tuple[tuple[Fraction, Fraction], ...]:
    """Disjoint rational intervals of width <= 2^-eps_exponent, one per real root of F_{2m}(t, 1)."""
    t = sympy.Symbol("t")
    coeffs = thue_poly(m).in_x(1)
    poly = sympy.Poly(sum(c * t**i for i, c in enumerate(coeffs)), t)
    eps = sympy.Rational(1, 2**eps_exponent)
    ivs = poly.intervals(eps=eps)
    out = []
    for (lo, hi), mult in ivs:
        if mult != 1:
            raise AssertionError(f"F_{2 * m}(t, 1) has a repeated root")
        out.append((Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))))
    if len(out) != m:
        raise AssertionError(f"expected {m} real roots of F_{2 * m}(t, 1), got {len(out)}")
    return tuple(sorted(out))


def _horner(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass
class SolutionRecord:
    """a(p^{d-1}) = target at prime p with trace +-a_abs."""

    p: int
    a_abs: int
    d: int
    target: int
    k: int = 2
    chi_p: int = 1
    congruence_status: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.p ** (self.d - 1)

    def revalidate(self) -> bool:
        for a in {self.a_abs, -self.a_abs}:
            fp = FrobeniusPair(self.p, self.k, self.chi_p, a)
            if coeff_prime_power(fp, self.d - 1) != self.target:
                return False
        return True

    def key(self):
        return (self.a_abs, self.p, self.d, self.chi_p)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "a_p": f"+-{self.a_abs}" if self.a_abs else "0",
            "a_abs": self.a_abs,
            "d": self.d,
            "n": f"{self.p}^{self.d - 1}",
            "target": self.target,
            "k": self.k,
            "chi_p": self.chi_p,
            "congruence_status": self.congruence_status,
        }


@dataclass
class SolverOutcome:
    """Result of one solver call.

    kind is one of: excluded_proved, excluded_bounded, solutions, family, unresolved.
    """

    kind: str
    d: int
    target: int
    solutions: list[SolutionRecord] = field(default_factory=list)
    family: dict | None = None
    bound: dict | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "target": self.target,
            "solutions": [s.to_dict() for s in self.solutions],
            "family": self.family,
            "bound": self.bound,
            "reason": self.reason,
        }


def _sorted(solutions: list[SolutionRecord]) -> list[SolutionRecord]:
    uniq = {s.key(): s for s in solutions}
    return sorted(uniq.values(), key=lambda s: (s.a_abs, s.p, s.chi_p))


# -- d = 3 -----------------------------------------------------------------

def d3_family_instances(ell: int, count: int = 12, a_limit: int = 2000, accept=None) -> list[dict]:
    """First members (a, p = a^2 - ell) of the weight-2 d = 3 family, optionally filtered."""
    out = []
    for a in range(0, a_limit + 1, 2):
        p = a * a - ell
        if p > 2 and is_prime(p) and deligne_ok(p, 2, a) and (accept is None or accept(p, a)):
            out.append({"a_abs": a, "p": p})
            if len(out) >= count:
                break
    return out


def solve_d3(ell: int, k: int = 2, chi_p: int = 1) -> SolverOutcome:
    """a(p^2) = a^2 - chi(p) p^(k-1) = ell."""
    if k == 2:
        return SolverOutcome(
            "family", 3, ell,
            family={
                "d": 3,
                "n": "p^2",
                "equation": f"a^2 - p = {ell}",
                "description": f"p = a^2 - ({ell}) with a even, p an odd prime, 3a^2 >= 4*({ell})",
                "instances": d3_family_instances(ell),
            },
            reason="a(p^2) = l is linear in p for fixed a; infinitely many candidates",
        )
    if k % 2 == 0 or k < 3:
        raise ValueError("solve_d3 handles k = 2 or odd k >= 3")
    half = (k - 1) // 2
    if chi_p == 0:
        return SolverOutcome("excluded_proved", 3, ell,
                             reason="chi(p) = 0 gives a(p^2) = a(p)^2, never an odd prime")
    sols = []
    if chi_p == 1:
        # (a - x)(a + x) = ell with x = p^half
        for s in {1, -1, abs(ell), -abs(ell)}:
            if ell % s:
                continue
            t = ell // s
            if (s + t) % 2:
                continue
            a, x = abs((s + t) // 2), (t - s) // 2
            if x <= 0 or a % 2:
                continue
            p = prime_power_base(x, half)
            if p and p > 2 and a <= 2 * x:
                sols.append(SolutionRecord(p, a, 3, ell, k, 1))
        reason = "difference of squares (a - x)(a + x) = l has one factorization up to sign"
    else:
        if ell < 0:
            return SolverOutcome("excluded_proved", 3, ell,
                                 reason="a^2 + p^(k-1) = l has no solution for negative l")
        for a in range(0, isqrt(ell) + 1, 2):
            rest = ell - a * a
            if rest > 0 and is_square(rest):
                p = prime_power_base(isqrt(rest), half)
                if p and p > 2:
                    sols.append(SolutionRecord(p, a, 3, ell, k, -1))
        reason = "finite sum-of-two-squares enumeration"
    sols = _sorted(sols)
    assert all(s.revalidate() for s in sols)
    if sols:
        return SolverOutcome("solutions", 3, ell, sols, reason=reason)
    return SolverOutcome("excluded_proved", 3, ell, reason=reason + "; no admissible solution")


# -- d = 5, weight 2 ---------------------------------------------------------

def solve_d5_weight2(ell: int, y_bound: int = DEFAULT_Y_BOUND) -> SolverOutcome:
    """a^4 - 3 p a^2 + p^2 = ell, searched over even traces 2 <= a <= y_bound.

    For fixed a = y the equation is quadratic in p with discriminant 5 y^4 + 4 ell.
    """
    sols = []
    for y in range(2, y_bound + 1, 2):
        y2 = y * y
        disc = 5 * y2 * y2 + 4 * ell
        if disc < 0:
            continue
        z = isqrt(disc)
        if z * z != disc:
            continue
        for num in {3 * y2 + z, 3 * y2 - z}:
            if num % 2:
                continue
            p = num // 2
            if p > 2 and y2 <= 4 * p and is_prime(p):
                sols.append(SolutionRecord(p, y, 5, ell, 2, 1))
    sols = _sorted(sols)
    assert all(s.revalidate() for s in sols)
    bound = {"y_bound": y_bound}
    if sols:
        return SolverOutcome("solutions", 5, ell, sols, bound=bound,
                             reason="square test on 5y^4 + 4l for each even y")
    return SolverOutcome("excluded_bounded", 5, ell, bound=bound,
                         reason=f"no even trace a <= {y_bound} gives a square 5a^4 + 4l")


# -- general odd d, per trace -------------------------------------------------

def _norm_to_prime(X: int, k: int, chi_p: int) -> int | None:
    if k == 2:
        return X if X > 2 and is_prime(X) else None
    if chi_p == 1 and X > 0:
        p = prime_power_base(X, k - 1)
    elif chi_p == -1 and X < 0:
        p = prime_power_base(-X, k - 1)
    else:
        return None
    return p if p and p > 2 else None


def solve_per_trace(ell: int, d: int, k: int = 2, chi_p: int = 1,
                    a_bound: int = DEFAULT_A_BOUND) -> SolverOutcome:
    """Exact integer roots of F_{d-1}(X, a^2) = ell for every even 2 <= a <= a_bound."""
    if d < 3 or d % 2 == 0:
        raise ValueError(f"d must be odd >= 3, got {d}")
    m = (d - 1) // 2
    if k != 2 and chi_p == 0:
        return SolverOutcome("excluded_proved", d, ell,
                             reason="chi(p) = 0 gives a(p^{d-1}) = a(p)^{d-1}, even")
    poly = thue_poly(m)
    encl = root_enclosures(m)
    w = iroot_ceil(abs(ell), m)
    sols = []
    for a in range(2, a_bound + 1, 2):
        Y = a * a
        coeffs = None
        seen = set()
        for lo, hi in encl:
            x_lo = floor(lo * Y) - w
            x_hi = ceil(hi * Y) + w
            for X in range(x_lo, x_hi + 1):
                if X in seen:
                    continue
                seen.add(X)
                p = _norm_to_prime(X, k, chi_p)
                if p is None or not deligne_ok(p, k, a):
                    continue
                if coeffs is None:
                    coeffs = poly.in_x(Y)
                if _horner(coeffs, X) == ell:
                    sols.append(SolutionRecord(p, a, d, ell, k, chi_p))
    sols = _sorted(sols)
    assert all(s.revalidate() for s in sols)
    bound = {"a_bound": a_bound}
    # a = 0 gives a(p^{d-1}) = (-chi p^(k-1))^m, a prime only when m = 1
    reason = (f"exact integer roots of F_{d - 1}(X, a^2) = {ell} per even trace a <= {a_bound}; "
              f"a = 0 gives +-p^(m(k-1)), m = {m} >= 2, never prime")
    if sols:
        return SolverOutcome("solutions", d, ell, sols, bound=bound, reason=reason)
    return SolverOutcome("excluded_bounded", d, ell, bound=bound, reason=reason)


def solve_higher(ell: int, d: int, k: int = 2, chi_p: int = 1,
                 a_bound: int = DEFAULT_A_BOUND) -> SolverOutcome:
    if d < 7:
        raise DegreeTooSmall(f"d = {d} < 7; use solve_d3 or solve_d5_weight2")
    return solve_per_trace(ell, d, k, chi_p, a_bound)


def weight1_residual(ell: int, chi_p: int) -> SolverOutcome:
    eq = f"y^2 = +-{abs(ell)}" + (f" + {chi_p}" if chi_p > 0 else f" - {-chi_p}" if chi_p < 0 else "")
    return SolverOutcome("unresolved", 3, ell, family={"equation": eq},
                         reason=f"weight 1: d need not be prime and the d = 3 residual {eq} is open")
