"""Torsion-point congruences for weight-2 coefficients.

If the curve has a rational point of odd prime order r, then for primes p not
dividing 2rN the reduction map keeps that point, so r | #E(F_p) = p + 1 - a(p).
The Frobenius polynomial then factors as (x - 1)(x - p) mod r and

    a(p^{d-1}) = u_d  ==  1 + p + ... + p^{d-1}   (mod r).

The geometric sum depends on d only through d mod r when p = 1 (mod r) and
through d mod ord_r(p) otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .arith import is_prime, multiplicative_order, odd_prime_divisors
from .defects import defective_matches
from .errors import ExceptionalEll


def geometric_residue(p: int, d: int, r: int) -> int:
    """(1 + p + ... + p^{d-1}) mod r."""
    total, term = 0, 1
    for _ in range(d):
        total = (total + term) % r
        term = term * p % r
    return total


def d_modulus(p_residue: int, r: int) -> int:
    """Period in d of the geometric sum for p = p_residue (mod r)."""
    p_residue %= r
    if p_residue == 0:
        return 1
    if p_residue == 1:
        return r
    return multiplicative_order(p_residue, r)


@dataclass(frozen=True, order=True)
class ResiduePair:
    """p = p_residue (mod r) together with d = d_residue (mod d_modulus).

    For p = 0 (mod r) the pair stands for every d >= 1 (the sum is then 1).
    """

    p_residue: int
    d_residue: int
    d_modulus: int

    def allows(self, p: int, d: int, r: int) -> bool:
        if p % r != self.p_residue:
            return False
        if self.p_residue == 0:
            return d >= 1
        return d % self.d_modulus == self.d_residue


@dataclass
class CongruenceSet:
    r: int
    target_residue: int
    pairs: list[ResiduePair] = field(default_factory=list)

    def allows(self, p: int, d: int) -> bool:
        return any(pair.allows(p, d, self.r) for pair in self.pairs)

    def normal_form(self) -> set[tuple[int, int]]:
        """Pairs (p mod r, d) with p in 1..r-1 and d in 0..r-1, one full period per p.

        This is the layout of the published lists, e.g. {(1,1),(2,1),(3,1),(4,1),(4,3)}
        for l = 1 (mod 5).
        """
        return {
            (p, d)
            for p in range(1, self.r)
            for d in range(self.r)
            if geometric_residue(p, d, self.r) == self.target_residue
        }

    def render(self) -> str:
        items = ", ".join(f"({p},{d})" for p, d in sorted(self.normal_form()))
        return f"(p, d) in {{{items}}} mod {self.r}"

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "target_residue": self.target_residue,
            "pairs": [vars(p) for p in self.pairs],
            "normal_form": sorted(self.normal_form()),
        }


def admissible_pairs(ell: int, r: int) -> CongruenceSet:
    """All residue pairs (p, d) with 1 + p + ... + p^{d-1} = ell (mod r)."""
    if r < 3 or not is_prime(r):
        raise ValueError(f"torsion prime must be an odd prime, got {r}")
    target = ell % r
    cs = CongruenceSet(r, target)
    for p in range(r):
        mod = d_modulus(p, r)
        if p == 0:
            if target == 1:
                cs.pairs.append(ResiduePair(0, 0, 1))
            continue
        for d in range(mod):
            if geometric_residue(p, d, r) == target:
                cs.pairs.append(ResiduePair(p, d, mod))
    return cs


def filter_divisor(ell: int, r: int, d: int) -> set[int]:
    """Residues p mod r (p prime to r) for which a(p^{d-1}) = ell survives the congruence."""
    target = ell % r
    return {p for p in range(1, r) if geometric_residue(p, d, r) == target}


def trace_congruence_ok(p: int, a_p: int, r: int) -> bool:
    """r | p + 1 - a_p, forced by a rational point of order r."""
    return (p + 1 - a_p) % r == 0


# forbidden divisor classes of the exclusion theorems, keyed by (r, ell mod r)
_CLASS_RULES = {
    (3, 2): (frozenset({2}), {5}),
    (5, 1): (frozenset({1, 3}), set()),
    (5, 2): (frozenset({2, 3}), {-3}),
    (5, 3): (frozenset({2, 3}), {3}),
    (5, 4): (frozenset({2, 4}), set()),
}


def divisor_class_exclusion(ell: int, r: int, include_ell_itself: bool = True) -> bool:
    """Class test of the divisor-congruence exclusion theorems.

    True means no odd prime divisor d of |l|(|l|-1)(|l|+1) lies in the forbidden
    classes mod r, which certifies a(n) != l. With include_ell_itself=False the
    divisor d = |l| is skipped (it cannot be the rank of apparition of a
    primitive divisor l, which would need l | disc).
    """
    rule = _CLASS_RULES.get((r, ell % r))
    if rule is None:
        return False
    forbidden, exceptional = rule
    if ell in exceptional:
        raise ExceptionalEll(f"l = {ell} is an exceptional value for r = {r}")
    a = abs(ell)
    divs = odd_prime_divisors(a * (a - 1) * (a + 1))
    if not include_ell_itself:
        divs = [d for d in divs if d != a]
    return all(d % r not in forbidden for d in divs)


@dataclass
class PrimePowerRule:
    r: int
    v: int
    target: int
    allowed_divisors: tuple[int, ...]
    steps: list[str]

    def to_dict(self) -> dict:
        return vars(self).copy()


def prime_power_rule(r: int, v: int, sign: int = 1) -> PrimePowerRule:
    """For a target +-r^v the only admissible odd divisor is d = r.

    Derivation: the congruence set for residue 0 allows odd d only with p = 1
    (mod r) and r | d. If d > r then u_r | u_d and r | u_r, so u_d = +-r^v would
    be a defective odd term of index d > r; the catalog has none.
    """
    if r not in (3, 5):
        raise ValueError("prime-power rule is stated for r in {3, 5}")
    if v < 1:
        raise ValueError("v must be positive")
    target = sign * r**v
    cs = admissible_pairs(0, r)
    odd_classes = []
    for pair in cs.pairs:
        if pair.p_residue == 0:
            continue
        # does the class contain odd d?
        if pair.d_modulus % 2 == 1 or pair.d_residue % 2 == 1:
            odd_classes.append(pair)
    steps = [f"residue-0 classes admitting odd d: {[(c.p_residue, c.d_residue, c.d_modulus) for c in odd_classes]}"]
    assert all(c.p_residue == 1 and c.d_residue == 0 for c in odd_classes), odd_classes
    steps.append(f"hence p = 1 mod {r} and {r} | d")
    late = [m for m in defective_matches(target, 2).feasible_matches if m.n > r and m.n % r == 0]
    assert not late, late
    steps.append(f"d > {r}: u_{r} | u_d and {r} | u_{r}, so u_d = {target} would be defective at index d; "
                 f"catalog has no such entry")
    return PrimePowerRule(r, v, target, (r,), steps)
