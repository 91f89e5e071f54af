"""Brute-force elliptic-curve oracle.

Point counts come from the completed-square model

    (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6,

so #E(F_p) = p + 1 + sum_x (f(x) / p) for odd p. That gives a(p), the Hecke
recurrence gives a(p^e) and multiplicativity gives the rest of the series.
"""
from __future__ import annotations

import io
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

import numpy as np
import sympy

from .arith import factorize, is_prime, is_square, primes_up_to
from .congruences import geometric_residue
from .errors import BadReduction, ConsistencyFailure, MalformedFile, ScanViolation, TorsionHypothesisFails
from .hecke import CoefficientSeries, deligne_ok, parity_shape

MAZUR_ORDERS = frozenset(range(1, 11)) | {12, 16}  # 16 = Z/2 x Z/8, the largest full group


@dataclass(frozen=True)
class CurveSpec:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int | None = None

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"singular curve {self.coefficients}")

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def bad_primes(self) -> set[int]:
        """Primes dividing the model discriminant (and the conductor hint, if any)."""
        bad = set(factorize(abs(self.discriminant)))
        if self.conductor:
            hint = set(factorize(self.conductor))
            if not hint <= bad:
                raise ValueError(f"conductor hint {self.conductor} has primes not dividing the discriminant")
            bad |= hint
        return bad

    def division_cubic(self) -> tuple[int, int, int, int]:
        """Coefficients of 4x^3 + b2 x^2 + 2 b4 x + b6, highest first."""
        b2, b4, b6, _ = self.b_invariants
        return (4, b2, 2 * b4, b6)

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coefficients) + "]"


def _char_sum(cubic: tuple[int, int, int, int], p: int) -> int:
    x = np.arange(p, dtype=np.int64)
    value = np.zeros(p, dtype=np.int64)
    for c in cubic:
        value = (value * x + (c % p)) % p
    squares = np.zeros(p, dtype=bool)
    squares[(x * x) % p] = True
    nonzero = value != 0
    residues = squares[value] & nonzero
    return int(residues.sum()) - int((~squares[value] & nonzero).sum())


def point_count(curve: CurveSpec, p: int) -> int:
    """#E(F_p) including the point at infinity, for an odd prime of good reduction."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if curve.discriminant % p == 0:
        raise BadReduction(f"{curve} has bad reduction at {p}")
    return p + 1 + _char_sum(curve.division_cubic(), p)


def trace_of_frobenius(curve: CurveSpec, p: int) -> int:
    return p + 1 - point_count(curve, p)


# -- exact group law -----------------------------------------------------------

INFINITY = None


def _on_curve(curve: CurveSpec, P) -> bool:
    if P is INFINITY:
        return True
    x, y = P
    a1, a2, a3, a4, a6 = curve.coefficients
    return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6


def negate(curve: CurveSpec, P):
    if P is INFINITY:
        return P
    x, y = P
    return (x, -y - curve.a1 * x - curve.a3)


def add(curve: CurveSpec, P, Q):
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    a1, a2, a3, a4, a6 = curve.coefficients
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def point_order(curve: CurveSpec, P, limit: int = 16) -> int | None:
    """Exact order of P if it is at most limit, else None."""
    Q = P
    for n in range(1, limit + 1):
        if Q is INFINITY:
            return n
        Q = add(curve, Q, P)
        if Q is INFINITY:
            return n + 1
    return None


def rational_two_torsion(curve: CurveSpec) -> list[tuple[Fraction, Fraction]]:
    """Points of order 2: x a rational root of the division cubic, y = -(a1 x + a3)/2."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(curve.division_cubic()), x)
    points = []
    for root in sympy.roots(poly, filter="Q"):
        xr = Fraction(int(root.p), int(root.q))
        yr = -(curve.a1 * xr + curve.a3) / 2
        assert _on_curve(curve, (xr, yr))
        points.append((xr, yr))
    return sorted(points)


def small_points(curve: CurveSpec, x_bound: int = 200) -> list[tuple[Fraction, Fraction]]:
    """Affine points with integral x in [-x_bound, x_bound] and rational y."""
    points = []
    c = curve.division_cubic()
    for xv in range(-x_bound, x_bound + 1):
        disc = ((c[0] * xv + c[1]) * xv + c[2]) * xv + c[3]
        if disc < 0 or not is_square(disc):
            continue
        s = math.isqrt(disc)
        for z in {s, -s}:
            y = Fraction(z - curve.a1 * xv - curve.a3, 2)
            points.append((Fraction(xv), y))
    return points


@dataclass
class TorsionCertificate:
    curve: str
    r: int
    sample_primes: list[int]
    group_orders: list[int]
    order_gcd: int
    two_torsion: list[tuple[str, str]]
    r_torsion_point: tuple[str, str] | None
    torsion_points_found: int

    def to_dict(self) -> dict:
        return vars(self).copy()


def torsion_probe(curve: CurveSpec, sample_primes: list[int], r: int, x_bound: int = 200) -> TorsionCertificate:
    """Evidence plus exact witnesses that E(Q) has a point of order 2 and a point of order r.

    The reduction map is injective on torsion at good p not dividing the order,
    so every sampled #E(F_p) is a multiple of #E(Q)_tors; the gcd bounds it from
    above and must be compatible with Mazur's list.
    """
    bad = curve.bad_primes()
    primes = [p for p in sample_primes if p not in bad and p % 2 and p % r]
    if len(primes) < 3:
        raise TorsionHypothesisFails("need at least three good sample primes coprime to 2r")
    orders = [point_count(curve, p) for p in primes]
    g = 0
    for n in orders:
        g = gcd(g, n)
    if g not in MAZUR_ORDERS:
        raise TorsionHypothesisFails(f"gcd of group orders {g} is not a torsion order on Mazur's list")
    if g % (2 * r):
        raise TorsionHypothesisFails(f"gcd of group orders {g} is not divisible by 2*{r}")
    two = rational_two_torsion(curve)
    if not two:
        raise TorsionHypothesisFails("no rational root of the 2-division cubic")
    found = {P for P in small_points(curve, x_bound) if point_order(curve, P) is not None}
    found |= set(two)
    r_point = None
    for P in sorted(found):
        order = point_order(curve, P)
        if order == r:
            r_point = P
            break
        if order and order % r == 0:
            Q = P
            for _ in range(order // r - 1):
                Q = add(curve, Q, P)
            r_point = Q
            break
    if r_point is None:
        raise TorsionHypothesisFails(f"no rational point of order {r} found with |x| <= {x_bound}")
    size = len(found) + 1
    if size not in MAZUR_ORDERS:
        raise TorsionHypothesisFails(f"{size} torsion points contradict Mazur's bound")
    return TorsionCertificate(
        curve=str(curve),
        r=r,
        sample_primes=primes,
        group_orders=orders,
        order_gcd=g,
        two_torsion=[(str(x), str(y)) for x, y in two],
        r_torsion_point=(str(r_point[0]), str(r_point[1])),
        torsion_points_found=size,
    )


# -- series -------------------------------------------------------------------

def curve_series(curve: CurveSpec, n_max: int, skip_primes: set[int] = frozenset()) -> CoefficientSeries:
    """a(n) for n <= n_max coprime to every prime in bad_primes | skip_primes | {2}."""
    avoid = curve.bad_primes() | set(skip_primes) | {2}
    primes = [p for p in primes_up_to(n_max) if p not in avoid]
    local: dict[int, int] = {}
    for p in primes:
        ap = trace_of_frobenius(curve, p)
        prev, cur, q = 1, ap, p
        local[p] = ap
        while q * p <= n_max:
            prev, cur = cur, ap * cur - p * prev
            q *= p
            local[q] = cur
    values = {1: 1}
    spf = list(range(n_max + 1))
    for p in range(2, math.isqrt(n_max) + 1):
        if spf[p] == p:
            for m in range(p * p, n_max + 1, p):
                if spf[m] == m:
                    spf[m] = p
    for n in range(2, n_max + 1):
        p = spf[n]
        if p in avoid:
            continue
        q = p
        while n % (q * p) == 0:
            q *= p
        rest = n // q
        if rest in values:
            values[n] = local[q] * values[rest]
    return CoefficientSeries(n_max, values)


@dataclass
class ScanReport:
    curve: str
    n_max: int
    r: int
    coefficients_checked: int
    hits: list[tuple[int, int]] = field(default_factory=list)
    parity_violations: list[int] = field(default_factory=list)
    congruence_violations: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.hits or self.parity_violations or self.congruence_violations)

    def to_dict(self) -> dict:
        d = vars(self).copy()
        d["clean"] = self.clean
        return d


def series_scan(curve: CurveSpec, n_max: int, exclusion_list, r: int,
                raise_on_violation: bool = True) -> ScanReport:
    """Check a(n), n <= n_max coprime to 2rN: no excluded value, parity shape, torsion congruence."""
    series = curve_series(curve, n_max, skip_primes={r})
    excluded = set(exclusion_list)
    report = ScanReport(str(curve), n_max, r, len(series.values))
    for n, a in sorted(series.values.items()):
        if n > 1 and a in excluded:
            report.hits.append((n, a))
        if (a % 2 == 1) != (parity_shape(n) == "odd"):
            report.parity_violations.append(n)
        fac = factorize(n)
        if len(fac) == 1:
            (p, e), = fac.items()
            if (a - geometric_residue(p, e + 1, r)) % r:
                report.congruence_violations.append((p, e, a))
    if raise_on_violation and not report.clean:
        raise ScanViolation(report)
    return report


# -- coefficient files ------------------------------------------------------------

_SEP = re.compile(r"[\s,;:=]+")


def _lines(source):
    if isinstance(source, Path):
        return source.read_text().splitlines()
    if isinstance(source, str):
        if "\n" not in source and Path(source).exists():
            return Path(source).read_text().splitlines()
        return source.splitlines()
    if isinstance(source, io.IOBase):
        return source.read().splitlines()
    return list(source)


def ingest_coefficients(source, k: int = 2) -> CoefficientSeries:
    """Read "n a(n)" records and validate them.

    Grammar: one record per line, n and a(n) as integers separated by
    whitespace, comma, semicolon, colon or '='. Text after '#' is a comment.
    The first record may be a non-numeric header (e.g. "n a(n)").
    """
    values: dict[int, int] = {}
    seen_record = False
    for lineno, raw in enumerate(_lines(source), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [t for t in _SEP.split(line) if t]
        try:
            if len(parts) != 2:
                raise ValueError
            n, a = int(parts[0]), int(parts[1])
        except ValueError:
            if not seen_record and not any(c.isdigit() for c in parts[0] if parts):
                seen_record = True
                continue
            raise MalformedFile(f"line {lineno}: expected 'n a(n)', got {raw!r}") from None
        seen_record = True
        if n < 1:
            raise MalformedFile(f"line {lineno}: index must be positive, got {n}")
        if n in values:
            raise MalformedFile(f"line {lineno}: duplicate index {n}")
        values[n] = a
    if not values:
        raise MalformedFile("no coefficient records")
    if values.get(1) != 1:
        raise ConsistencyFailure(f"a(1) must be 1, got {values.get(1)}")
    series = CoefficientSeries(max(values), values)
    bad = series.multiplicativity_failures(limit=1)
    if bad:
        m, n = bad[0]
        raise ConsistencyFailure(f"a({m * n}) = {values[m * n]} but a({m}) a({n}) = {values[m] * values[n]}")
    for n, a in values.items():
        if is_prime(n) and not deligne_ok(n, k, a):
            raise ConsistencyFailure(f"a({n}) = {a} violates |a(p)| <= 2 p^((k-1)/2)")
    return series


def write_coefficients(series: CoefficientSeries, path) -> None:
    with open(path, "w") as fh:
        fh.write("# n a(n)\n")
        for n in sorted(series.values):
            fh.write(f"{n} {series.values[n]}\n")
