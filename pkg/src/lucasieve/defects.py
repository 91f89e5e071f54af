"""Catalog of defective Lucas numbers and target screening.

The catalog covers four tables of defective values u_n (terms with no primitive
prime divisor):

* table 1, sporadic pairs for even weight (weight 2 uses the rows with B prime);
* table 2, sporadic pairs for odd weight;
* table 3, parameterized families for even weight. Only the two index-3 rows
  (u_3 = -1 with p = m^2 + 1, and u_3 = eps 3^r) are encoded. The other rows
  are gated by auxiliary sets B_{i,k} that are not enumerated here;
  they only produce even-index terms, and with an even trace every even-index
  term is even, so odd targets in weight 2 never meet them;
* table 4, parameterized families for odd weight, fully encoded.

Rows are stored in ``data/defect_tables.json``; sporadic values are stored for
the positive sign of A, and u_n(-A, B) = (-1)^(n-1) u_n(A, B) recovers the rest.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd, isqrt

from .arith import divisors, prime_power_base
from .errors import TableInconsistency
from .lucas import LucasPair, has_primitive_divisor, lucas_sequence, lucas_term, primitive_prime_divisors


@lru_cache(maxsize=1)
def load_tables() -> dict:
    with resources.files("lucasieve").joinpath("data/defect_tables.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def catalog_version() -> str:
    return load_tables()["catalog_version"]


def sporadic_rows(table_id: int | None = None) -> list[dict]:
    rows = [r for r in load_tables()["records"] if r["kind"] == "sporadic"]
    if table_id is not None:
        rows = [r for r in rows if r["table_id"] == table_id]
    return rows


def parametric_rows(table_id: int | None = None) -> list[dict]:
    rows = [r for r in load_tables()["records"] if r["kind"] == "parametric"]
    if table_id is not None:
        rows = [r for r in rows if r["table_id"] == table_id]
    return rows


def _printed_sign_ok(row: dict, value_plus: int) -> bool:
    printed = row["printed"]
    if row["n"] % 2 == 1:
        return printed.lstrip("-").isdigit() and int(printed) == value_plus
    magnitude = int(printed[1:])
    sign_for_plus = 1 if printed[0] == "±" else -1
    return magnitude * sign_for_plus == value_plus


@dataclass
class TableReport:
    rows_checked: int
    passed: list[dict]
    catalog_version: str

    @property
    def ok(self) -> bool:
        return len(self.passed) == self.rows_checked


def verify_tables() -> TableReport:
    """Recompute every sporadic row from the recurrence; raise on any mismatch."""
    rows = sporadic_rows()
    passed = []
    for row in rows:
        A, B, n = row["A_abs"], row["B_or_formula"], row["n"]
        pair = LucasPair(A, B)
        got = lucas_term(pair, n)
        if got != row["value_or_formula"]:
            raise TableInconsistency(row, f"recurrence gives u_{n} = {got}")
        if not _printed_sign_ok(row, got):
            raise TableInconsistency(row, "printed sign pattern disagrees with the recurrence")
        minus = lucas_term(pair.negated(), n)
        if minus != (-1) ** (n - 1) * got:
            raise TableInconsistency(row, "sign symmetry u_n(-A,B) = (-1)^(n-1) u_n(A,B) fails")
        if primitive_prime_divisors(pair, n):
            raise TableInconsistency(row, "tabulated value has a primitive prime divisor")
        passed.append({"table": row["table_id"], "A": A, "B": B, "n": n, "value": got})
    return TableReport(len(rows), passed, catalog_version())


# -- matching ---------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """A concrete Lucas pair (A, B = chi p^(k-1)) realising a defective value."""

    A: int
    B: int
    p: int
    chi_p: int
    n: int
    params: tuple = ()


@dataclass
class DefectMatch:
    table_id: int
    family: str
    n: int
    value: int
    params: dict
    constraint: str
    instances: list[Instance] = field(default_factory=list)
    unbounded: bool = False  # infinitely many instances, described by `constraint`

    @property
    def feasible(self) -> bool:
        return self.unbounded or bool(self.instances)

    def to_dict(self) -> dict:
        return {
            "table": self.table_id,
            "family": self.family,
            "n": self.n,
            "value": self.value,
            "params": self.params,
            "constraint": self.constraint,
            "instances": [vars(i) | {"params": list(i.params)} for i in self.instances],
            "unbounded": self.unbounded,
        }


@dataclass
class DefectQueryResult:
    matches: list[DefectMatch]
    exhaustive: bool

    @property
    def feasible_matches(self) -> list[DefectMatch]:
        return [m for m in self.matches if m.feasible]


def _norm_prime(B: int, k: int, chi_p: int | None) -> int | None:
    """Odd prime p with B = chi p^(k-1) for an allowed chi, else None."""
    if B == 0:
        return None
    chi = 1 if B > 0 else -1
    if chi_p is not None and chi != chi_p:
        return None
    if k == 1:
        return None  # handled by callers: B = chi(p) leaves p free
    p = prime_power_base(abs(B), k - 1)
    if p is None or p == 2:
        return None
    return p


def _chis(k: int, chi_p: int | None) -> list[int]:
    if k == 2:
        return [1]
    return [chi_p] if chi_p is not None else [-1, 0, 1]


def _sporadic_matches(value: int, k: int, chi_p, even_trace: bool) -> list[DefectMatch]:
    table = 1 if k == 2 else 2
    out = []
    for row in sporadic_rows(table):
        A, B, n = row["A_abs"], row["B_or_formula"], row["n"]
        if even_trace and A % 2:
            continue
        signs = [s for s in (1, -1) if s ** (n - 1) * row["value_or_formula"] == value]
        if not signs:
            continue
        if k == 1:
            if abs(B) != 1 or (chi_p is not None and B != chi_p):
                continue
            p = 0  # any prime with chi(p) = B
        else:
            p = _norm_prime(B, k, chi_p)
            if p is None:
                continue
        match = DefectMatch(
            table, f"T{table}:({A},{B})", n, value, {"A_abs": A, "B": B},
            f"(A, B) = (+-{A}, {B})",
        )
        match.instances = [Instance(s * A, B, p, 1 if B > 0 else -1, n) for s in signs]
        out.append(match)
    return out


def _u3_free_family(value: int, offset: int, k: int, chi_p, even_trace: bool, family: str,
                    table: int, params: dict, constraint: str, extra_ok=lambda m: True,
                    min_m: int = 1) -> DefectMatch:
    """u_3 = A^2 - B = value with B = m^2 - value, i.e. chi p^(k-1) = m^2 + offset."""
    match = DefectMatch(table, family, 3, value, params, constraint)
    if k == 2:
        # p = m^2 + offset ranges over infinitely many m in general
        match.unbounded = True
        return match
    for chi in _chis(k, chi_p):
        if chi == 0:
            continue
        if k == 1:
            # B = chi, so m^2 = chi - offset
            sq = chi - offset
            if sq >= 0 and isqrt(sq) ** 2 == sq:
                m = isqrt(sq)
                if m >= min_m and (not even_trace or m % 2 == 0) and extra_ok(m):
                    match.instances.append(Instance(m, chi, 0, chi, 3, (m,)))
            continue
        half = (k - 1) // 2
        # chi x^2 = m^2 + offset with x = p^half
        # chi = 1: (x - m)(x + m) = offset; chi = -1: x^2 + m^2 = -offset
        cands = []
        if chi == 1:
            if offset == 0:
                continue
            for d1 in divisors(offset):
                for s in (1, -1):
                    a_, b_ = s * d1, offset // (s * d1)
                    if (a_ + b_) % 2 == 0:
                        x, m = (a_ + b_) // 2, (b_ - a_) // 2
                        if x > 0 and m > 0:
                            cands.append((x, m))
        else:
            total = -offset
            for m in range(1, isqrt(max(total, 0)) + 1):
                rest = total - m * m
                if rest > 0 and isqrt(rest) ** 2 == rest:
                    cands.append((isqrt(rest), m))
        for x, m in set(cands):
            if m < min_m or (even_trace and m % 2) or not extra_ok(m):
                continue
            p = prime_power_base(x, half)
            if p is None or p == 2:
                continue
            B = chi * x * x
            match.instances.append(Instance(m, B, p, chi, 3, (m,)))
    match.instances.sort(key=lambda i: (i.p, i.A))
    return match


def _three_power(value: int) -> tuple[int, int] | None:
    eps = 1 if value > 0 else -1
    v, r = abs(value), 0
    while v % 3 == 0:
        v //= 3
        r += 1
    if v != 1 or r == 0:
        return None
    return eps, r


def _index3_matches(value: int, k: int, chi_p, even_trace: bool) -> list[DefectMatch]:
    table = 3 if k == 2 else 4
    out = []
    if value == -1:
        fam = "T3R1" if k == 2 else "T4R1"
        out.append(_u3_free_family(value, 1, k, chi_p, even_trace, fam, table, {},
                                   "chi(p) p^(k-1) = m^2 + 1" + (", m > 1" if k == 2 else ""),
                                   min_m=2 if k == 2 else 1))
    if value == 1 and k != 2:
        out.append(_u3_free_family(value, -1, k, chi_p, even_trace, "T4R2", table, {},
                                   "chi(p) p^(k-1) = m^2 - 1, m > 1", min_m=2))
    tp = _three_power(value)
    if tp is not None:
        eps, r = tp
        fam = "T3R2" if k == 2 else "T4R3"

        def ok(m, eps=eps, r=r):
            return m % 3 != 0 and (eps, r, m) != (1, 1, 2)

        out.append(_u3_free_family(value, -value, k, chi_p, even_trace, fam, table,
                                   {"eps": eps, "r": r},
                                   f"chi(p) p^(k-1) = m^2 - ({value}), 3 !| m, (eps,r,m) != (1,1,2)",
                                   extra_ok=ok))
    return out


def _table4_bounded_rows(value: int):
    """Yield (family, n, m, eps, r, B) candidates from the index-4 and index-6 rows."""
    bound = abs(value)
    rmax = max(1, bound.bit_length() + 1)
    for m in range(1, bound + 1):
        for eps in (1, -1):
            # 2B = m^2 - eps, m odd > 1
            if m % 2 == 1 and m != 1:
                yield "T4R4", 4, m, eps, None, (m * m - eps) // 2
            # 2B = m^2 - 2 eps, m even, (eps, m) != (1, 2)
            if m % 2 == 0 and (eps, m) != (1, 2):
                yield "T4R5", 4, m, eps, None, (m * m - 2 * eps) // 2
            # 3B = m^2 - 3 eps, 3 | m
            if m % 3 == 0:
                yield "T4R7", 6, m, eps, None, (m * m - 3 * eps) // 3
        if m % 3 and m > 3:
            yield "T4R6", 6, m, None, None, (m * m - 1) // 3
        for r in range(1, rmax + 1):
            if m % 6 in (1, 5) and (r, m) != (1, 1):
                num = 4 * m * m - (-2) ** (r + 2)
                if num % 12 == 0:
                    yield "T4R8", 6, m, None, r, num // 12
            if m % 6 == 3:
                for eps in (1, -1):
                    num = 4 * m * m - 3 * 2 ** (r + 2) * eps
                    if num % 12 == 0:
                        yield "T4R9", 6, m, eps, r, num // 12


def _table4_value_rows(value: int, k: int, chi_p, even_trace: bool) -> list[DefectMatch]:
    found: dict[tuple, DefectMatch] = {}
    for fam, n, m, eps, r, B in _table4_bounded_rows(value):
        if even_trace and m % 2:
            continue
        if B == 0 or gcd(m, B) != 1:
            continue
        for A in (m, -m):
            if lucas_sequence(A, B, n)[n] != value:
                continue
            try:
                pair = LucasPair(A, B)
            except ValueError:
                continue
            if has_primitive_divisor(pair, n):
                continue
            chi = 1 if B > 0 else -1
            if chi_p is not None and chi != chi_p:
                continue
            if k == 1:
                if abs(B) != 1:
                    continue
                p = 0
            else:
                p = _norm_prime(B, k, chi_p)
                if p is None:
                    continue
            key = (fam, n, eps, r)
            match = found.setdefault(key, DefectMatch(4, fam, n, value, {"eps": eps, "r": r}, ""))
            match.instances.append(Instance(A, B, p, chi, n, (m, eps, r)))
    rows = {r["family_id"]: r for r in parametric_rows(4)}
    for (fam, *_), match in found.items():
        match.constraint = f'{rows[fam]["B_or_formula"]}; {rows[fam]["constraints"]}'.rstrip("; ")
    return list(found.values())


def defective_matches(value: int, k: int = 2, chi_p: int | None = None,
                      even_trace: bool = True) -> DefectQueryResult:
    """Catalog families in which u_n = value occurs as a defective term.

    For weight 2 the index-3 families are infinite in m and come back with
    ``unbounded`` set; everywhere else instances are enumerated exactly.
    """
    if k != 2 and k % 2 == 0:
        return DefectQueryResult([], exhaustive=False)
    matches = _sporadic_matches(value, k, chi_p, even_trace)
    matches += _index3_matches(value, k, chi_p, even_trace)
    if k != 2:
        matches += _table4_value_rows(value, k, chi_p, even_trace)
    return DefectQueryResult(matches, exhaustive=True)


@dataclass
class DefectScreen:
    target: int
    defect_free: bool
    matches: list[DefectMatch]
    reasons: list[str]

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "defect_free": self.defect_free,
            "matches": [m.to_dict() for m in self.matches],
            "reasons": self.reasons,
        }


def is_defect_free_target(ell: int, k: int = 2, chi_p: int | None = None,
                          even_trace: bool = True,
                          trace_divisible_by_3: bool | None = None) -> DefectScreen:
    """Whether +-ell can only occur as a non-defective value u_d.

    ``trace_divisible_by_3`` describes a context where 3 | a(p); the eps 3^r
    family then disappears because 3 would already divide u_2.
    """
    res = defective_matches(ell, k, chi_p, even_trace)
    live, reasons = [], []
    for m in res.matches:
        if not m.feasible:
            reasons.append(f"{m.family}: constraint {m.constraint} has no admissible solution")
            continue
        if m.family in ("T3R2", "T4R3") and trace_divisible_by_3:
            reasons.append(f"{m.family}: needs 3 !| a(p), context has 3 | a(p)")
            continue
        live.append(m)
    if not res.matches:
        reasons.append("no catalog family produces this value")
    return DefectScreen(ell, not live, res.matches, reasons)


def defective_index_instances(value: int, n: int, k: int = 2, chi_p: int | None = None,
                              even_trace: bool = True) -> list[DefectMatch]:
    """Feasible matches for `value` at index exactly n."""
    return [m for m in defective_matches(value, k, chi_p, even_trace).feasible_matches if m.n == n]


def odd_defective_values(A: int, B: int, n_max: int = 30) -> list[tuple[int, int]]:
    """Brute force: (n, u_n) with 3 <= n <= n_max, u_n odd and defective."""
    pair = LucasPair(A, B)
    out = []
    for n in range(3, n_max + 1):
        u = lucas_term(pair, n)
        if u % 2 and not has_primitive_divisor(pair, n):
            out.append((n, u))
    return out

