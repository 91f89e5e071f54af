"""Decision procedure: is l = a(n) possible, and if so where?

Weight 2 (rational 2-torsion plus a point of order r in {3, 5}):

1. parity: a(n) odd forces n to be an odd square, so every d = e + 1 is odd;
2. units: a(m) = +-1 is impossible for m > 1 (catalog plus congruences), so a
   prime l = a(n) forces n = p^{d-1};
3. defect screen: if l is never a defective value, l is a primitive divisor of
   u_d, hence d is the rank of apparition: an odd prime dividing l^2 - 1 (the
   divisor d = |l| would need l | disc, contradicting primitivity);
4. per divisor d: torsion congruence filter, then an exact solver;
5. fold the per-divisor outcomes into a verdict.

Odd weight k >= 3 follows the same steps without torsion congruences, running
over chi(p) in {-1, 0, 1}. Weight 1 only reports its residual equation.

Every step is recorded as (op, inputs, result) where op names an entry of
``STEP_OPS``; ``replay_certificate`` re-executes them.
"""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .arith import is_prime, odd_divisors, odd_prime_divisors, prime_divisors
from .congruences import (
    divisor_class_exclusion,
    filter_divisor,
    prime_power_rule,
    trace_congruence_ok,
)
from .defects import catalog_version, defective_index_instances, defective_matches, is_defect_free_target
from .errors import ExceptionalEll, UnsupportedWeight
from .hecke import parity_shape
from .thue import (
    DEFAULT_A_BOUND,
    DEFAULT_Y_BOUND,
    SolutionRecord,
    d3_family_instances,
    solve_d3,
    solve_d5_weight2,
    solve_per_trace,
    weight1_residual,
)

EXCLUDED_PROVED = "EXCLUDED_PROVED"
EXCLUDED_BOUNDED = "EXCLUDED_BOUNDED"
LOCATED = "LOCATED"
UNRESOLVED = "UNRESOLVED"


def _prime_power_exponent(n: int, r: int) -> int | None:
    v = 0
    while n > 1 and n % r == 0:
        n //= r
        v += 1
    return v if n == 1 and v > 0 else None


@dataclass(frozen=True)
class SieveTask:
    ell: int
    k: int = 2
    r: int | None = 3
    y_bound: int = DEFAULT_Y_BOUND
    a_bound: int = DEFAULT_A_BOUND
    include_ell_itself: bool = True

    def __post_init__(self):
        if self.ell % 2 == 0:
            raise ValueError(f"target must be odd, got {self.ell}")
        if self.k == 2:
            if self.r not in (3, 5):
                raise ValueError(f"weight 2 needs torsion r in {{3, 5}}, got {self.r}")
        elif self.k % 2 == 1 and self.k >= 1:
            object.__setattr__(self, "r", None)
        a = abs(self.ell)
        if a != 1 and not is_prime(a) and not (self.r and _prime_power_exponent(a, self.r)):
            raise ValueError(f"|l| = {a} must be 1, an odd prime, or a power of the torsion prime")
        if self.y_bound < 2 or self.a_bound < 2:
            raise ValueError("search bounds must be >= 2")

    def to_dict(self) -> dict:
        return asdict(self)


# -- step operations ---------------------------------------------------------

def op_parity_reduction(k: int) -> dict:
    assert parity_shape(9) == "odd" and parity_shape(15) == "even"
    return {
        "shape": "a(n) odd iff n is an odd square (a(p) even for p !| 2N)",
        "consequence": "n = prod p_i^(d_i - 1) with every d_i odd",
        "k": k,
    }


def op_unit_exclusion(k: int, r: int | None = None) -> dict:
    """Is a(p^{d-1}) = +-1 impossible for every odd d >= 3?

    u_d = +-1 has no prime divisor at all, so it is defective and must come
    from the catalog; each catalog occurrence is then checked against the
    torsion congruences (weight 2) or its own constraint (odd weight).
    """
    eliminated, survivors = [], []
    for value in (1, -1):
        for match in defective_matches(value, k).matches:
            tag = f"{match.family} u_{match.n} = {value}"
            if not match.feasible:
                eliminated.append(f"{tag}: constraint {match.constraint} unsolvable")
                continue
            if k != 2:
                survivors.append(tag)
                continue
            residues = filter_divisor(value, r, match.n)
            if match.unbounded:
                if residues:
                    survivors.append(f"{tag}: p residues {sorted(residues)} mod {r} remain")
                else:
                    eliminated.append(f"{tag}: no p mod {r} gives geometric sum {value % r}")
                continue
            for inst in match.instances:
                if inst.p in (2, r):
                    eliminated.append(f"{tag} at p = {inst.p}: p divides 2r")
                elif inst.p % r not in residues or not trace_congruence_ok(inst.p, inst.A, r):
                    eliminated.append(f"{tag} at p = {inst.p}, a = {inst.A}: torsion congruence fails")
                else:
                    survivors.append(f"{tag} at p = {inst.p}, a = {inst.A}")
    return {"excluded": not survivors, "eliminated": eliminated, "survivors": survivors}


def op_defect_screen(ell: int, k: int) -> dict:
    screen = is_defect_free_target(ell, k)
    return {
        "defect_free": screen.defect_free,
        "live_families": sorted({m.family for m in screen.matches if m.feasible}),
        "reasons": screen.reasons,
    }


def candidate_divisors(ell: int, k: int = 2, torsion: int | None = None) -> list[int]:
    """Odd d >= 3 that can carry a(p^{d-1}) = ell.

    Odd prime divisors of |l|(|l|-1)(|l|+1) when l is never defective, all odd
    divisors >= 3 otherwise; a power of the torsion prime r reduces to d = r.
    """
    a = abs(ell)
    if a == 1:
        return []
    if torsion and k == 2:
        v = _prime_power_exponent(a, torsion)
        if v:
            return list(prime_power_rule(torsion, v, 1 if ell > 0 else -1).allowed_divisors)
    n = a * (a - 1) * (a + 1)
    if is_defect_free_target(ell, k).defect_free:
        return odd_prime_divisors(n)
    return odd_divisors(n, minimum=3)


def op_candidate_divisors(ell: int, k: int, torsion: int | None) -> dict:
    return {"divisors": candidate_divisors(ell, k, torsion)}


def op_prime_power_rule(r: int, v: int, sign: int) -> dict:
    rule = prime_power_rule(r, v, sign)
    return {"allowed_divisors": list(rule.allowed_divisors), "steps": rule.steps}


def op_class_exclusion(ell: int, r: int, include_ell_itself: bool) -> dict:
    try:
        return {"certified": divisor_class_exclusion(ell, r, include_ell_itself)}
    except ExceptionalEll as exc:
        return {"certified": False, "exceptional": str(exc)}


def op_congruence_filter(ell: int, r: int, d: int) -> dict:
    return {"residues": sorted(filter_divisor(ell, r, d))}


def op_rank_argument(ell: int, d: int, k: int) -> dict:
    """d = |l| >= 5: l | u_d forces rank l, hence l | disc, so l is not primitive."""
    live = defective_index_instances(ell, d, k)
    return {
        "excluded": not live,
        "detail": (f"a(p^{d - 1}) = {ell} with d = |l| would be a defective term of index {d}; "
                   + ("catalog has none" if not live else f"catalog families {[m.family for m in live]}")),
    }


def op_composite_prune(ell: int, d: int, k: int) -> dict:
    d1 = min(prime_divisors(d))
    live = defective_index_instances(ell, d, k)
    return {
        "excluded": not live,
        "d1": d1,
        "detail": (f"u_{d1} | u_{d} = +-{abs(ell)}; u_{d1} = +-1 is excluded, so {abs(ell)} | u_{d1} "
                   f"and u_{d} would be defective at index {d}; "
                   + ("catalog has none" if not live else f"catalog families {[m.family for m in live]}")),
    }


def op_solve(ell: int, d: int, k: int, chi_p: int, y_bound: int, a_bound: int) -> dict:
    if d == 3:
        out = solve_d3(ell, k, chi_p)
    elif d == 5 and k == 2:
        out = solve_d5_weight2(ell, y_bound)
    else:
        out = solve_per_trace(ell, d, k, chi_p, a_bound)
    return out.to_dict()


def op_weight1_residual(ell: int, chi_p: int) -> dict:
    return weight1_residual(ell, chi_p).to_dict()


STEP_OPS = {
    "parity_reduction": op_parity_reduction,
    "unit_exclusion": op_unit_exclusion,
    "defect_screen": op_defect_screen,
    "candidate_divisors": op_candidate_divisors,
    "prime_power_rule": op_prime_power_rule,
    "class_exclusion": op_class_exclusion,
    "congruence_filter": op_congruence_filter,
    "rank_argument": op_rank_argument,
    "composite_prune": op_composite_prune,
    "solve": op_solve,
    "weight1_residual": op_weight1_residual,
}


# -- verdicts ----------------------------------------------------------------

@dataclass
class Verdict:
    kind: str
    certificate: list[dict] = field(default_factory=list)
    solutions: list[dict] = field(default_factory=list)
    families: list[dict] = field(default_factory=list)
    rejected: list[dict] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    per_divisor: list[dict] = field(default_factory=list)

    @property
    def excluded(self) -> bool:
        return self.kind in (EXCLUDED_PROVED, EXCLUDED_BOUNDED)


class _Recorder:
    def __init__(self):
        self.steps: list[dict] = []

    def __call__(self, op: str, **inputs) -> dict:
        result = STEP_OPS[op](**inputs)
        self.steps.append({"index": len(self.steps), "op": op, "inputs": inputs, "result": result})
        return result


def _annotate(sol: dict, r: int, residues: set[int]) -> dict:
    p, a = sol["p"], sol["a_abs"]
    status = {
        "r": r,
        "p_mod_r": p % r,
        "p_coprime_to_2r": p not in (2, r),
        "geometric_sum": "pass" if p % r in residues else "fail",
        "trace": "pass" if (trace_congruence_ok(p, a, r) or trace_congruence_ok(p, -a, r)) else "fail",
    }
    status["accepted"] = (status["p_coprime_to_2r"] and status["geometric_sum"] == "pass"
                          and status["trace"] == "pass")
    return status


def _fold(per_divisor: list[dict]) -> str:
    statuses = {entry["status"] for entry in per_divisor}
    if "located" in statuses:
        return LOCATED
    if "unresolved" in statuses:
        return UNRESOLVED
    if "excluded_bounded" in statuses:
        return EXCLUDED_BOUNDED
    return EXCLUDED_PROVED


def _weight2(task: SieveTask, rec: _Recorder) -> Verdict:
    ell, r = task.ell, task.r
    verdict = Verdict(EXCLUDED_PROVED)
    rec("parity_reduction", k=2)
    units = rec("unit_exclusion", k=2, r=r)
    if abs(ell) == 1:
        verdict.kind = EXCLUDED_PROVED if units["excluded"] else UNRESOLVED
        verdict.per_divisor.append({"d": None, "status": "excluded_proved" if units["excluded"] else "unresolved"})
        return verdict
    if not units["excluded"]:
        verdict.flags.append("unit_values_not_excluded")

    v = _prime_power_exponent(abs(ell), r)
    if v:
        divisors = rec("prime_power_rule", r=r, v=v, sign=1 if ell > 0 else -1)["allowed_divisors"]
    else:
        rec("defect_screen", ell=ell, k=2)
        divisors = rec("candidate_divisors", ell=ell, k=2, torsion=r)["divisors"]
        rec("class_exclusion", ell=ell, r=r, include_ell_itself=task.include_ell_itself)
        rec("class_exclusion", ell=ell, r=r, include_ell_itself=not task.include_ell_itself)

    for d in divisors:
        entry = {"d": d, "solutions": [], "rejected": [], "family": None}
        residues = set(rec("congruence_filter", ell=ell, r=r, d=d)["residues"])
        if not residues:
            entry.update(status="excluded_proved", reason=f"no p mod {r} gives the residue of {ell}")
        elif not is_prime(d):
            pr = rec("composite_prune", ell=ell, d=d, k=2)
            if pr["excluded"]:
                entry.update(status="excluded_proved", reason=pr["detail"])
            else:
                entry = _solve_weight2_divisor(task, rec, d, residues, entry)
        elif d == abs(ell) and d >= 5 and not v:
            ra = rec("rank_argument", ell=ell, d=d, k=2)
            if ra["excluded"]:
                entry.update(status="excluded_proved", reason=ra["detail"])
            else:
                entry = _solve_weight2_divisor(task, rec, d, residues, entry)
        else:
            entry = _solve_weight2_divisor(task, rec, d, residues, entry)
        verdict.per_divisor.append(entry)

    for entry in verdict.per_divisor:
        verdict.solutions += entry["solutions"]
        verdict.rejected += entry["rejected"]
        if entry["family"]:
            verdict.families.append(entry["family"])
    if verdict.rejected:
        verdict.flags.append("congruence_rejected_solutions")
    verdict.kind = _fold(verdict.per_divisor)
    return verdict


def _solve_weight2_divisor(task, rec, d, residues, entry) -> dict:
    ell, r = task.ell, task.r
    out = rec("solve", ell=ell, d=d, k=2, chi_p=1, y_bound=task.y_bound, a_bound=task.a_bound)
    if out["kind"] == "family":
        fam = dict(out["family"])

        def accept(p, a):
            return _annotate({"p": p, "a_abs": a}, r, residues)["accepted"]

        fam["p_residues_mod_r"] = sorted(residues)
        fam["r"] = r
        fam["description"] += f", p mod {r} in {sorted(residues)}, a = p + 1 (mod {r}) up to sign"
        fam["instances"] = d3_family_instances(ell, accept=accept)
        entry.update(status="located", family=fam, reason=out["reason"])
        return entry
    for sol in out["solutions"]:
        sol = dict(sol)
        sol["congruence_status"] = _annotate(sol, r, residues)
        (entry["solutions"] if sol["congruence_status"]["accepted"] else entry["rejected"]).append(sol)
    entry["bound"] = out["bound"]
    entry["reason"] = out["reason"]
    if entry["solutions"]:
        entry["status"] = "located"
    elif out["kind"] == "excluded_proved":
        entry["status"] = "excluded_proved"
    else:
        entry["status"] = "excluded_bounded"
    return entry


def _odd_weight(task: SieveTask, rec: _Recorder) -> Verdict:
    ell, k = task.ell, task.k
    verdict = Verdict(EXCLUDED_PROVED)
    rec("parity_reduction", k=k)
    units = rec("unit_exclusion", k=k, r=None)
    if abs(ell) == 1:
        verdict.kind = EXCLUDED_PROVED if units["excluded"] else UNRESOLVED
        verdict.per_divisor.append({"d": None, "status": "excluded_proved" if units["excluded"] else "unresolved"})
        return verdict
    rec("defect_screen", ell=ell, k=k)
    divisors = rec("candidate_divisors", ell=ell, k=k, torsion=None)["divisors"]
    for d in divisors:
        entry = {"d": d, "solutions": [], "rejected": [], "family": None, "by_chi": {}}
        if not is_prime(d) and rec("composite_prune", ell=ell, d=d, k=k)["excluded"]:
            entry["status"] = "excluded_proved"
        elif d == abs(ell) and d >= 5 and rec("rank_argument", ell=ell, d=d, k=k)["excluded"]:
            entry["status"] = "excluded_proved"
        else:
            kinds = []
            for chi in (-1, 0, 1):
                out = rec("solve", ell=ell, d=d, k=k, chi_p=chi, y_bound=task.y_bound, a_bound=task.a_bound)
                entry["by_chi"][chi] = out["kind"]
                entry["solutions"] += out["solutions"]
                if out["bound"]:
                    entry["bound"] = out["bound"]
                kinds.append(out["kind"])
            if entry["solutions"]:
                entry["status"] = "located"
            elif "excluded_bounded" in kinds:
                entry["status"] = "excluded_bounded"
            else:
                entry["status"] = "excluded_proved"
        verdict.per_divisor.append(entry)
    for entry in verdict.per_divisor:
        verdict.solutions += entry["solutions"]
    verdict.kind = _fold(verdict.per_divisor)
    return verdict


def run_sieve(task: SieveTask) -> Verdict:
    rec = _Recorder()
    if task.k == 1:
        verdict = Verdict(UNRESOLVED)
        for chi in (-1, 0, 1):
            out = rec("weight1_residual", ell=task.ell, chi_p=chi)
            verdict.families.append(out["family"])
        verdict.per_divisor.append({"d": 3, "status": "unresolved"})
    elif task.k == 2:
        verdict = _weight2(task, rec)
    elif task.k % 2 == 1 and task.k >= 3:
        verdict = _odd_weight(task, rec)
    else:
        raise UnsupportedWeight(f"weight {task.k} is not supported (use 2 or odd k)")
    verdict.certificate = rec.steps
    return verdict


def report(task: SieveTask, verdict: Verdict) -> dict:
    """Self-describing report document; stable field names."""
    return {
        "task": task.to_dict(),
        "verdict": verdict.kind,
        "certificate": verdict.certificate,
        "solutions": verdict.solutions,
        "families": verdict.families,
        "rejected_solutions": verdict.rejected,
        "flags": verdict.flags,
        "per_divisor": verdict.per_divisor,
        "bounds": {"y_bound": task.y_bound, "a_bound": task.a_bound},
        "catalog_version": catalog_version(),
        "version": __version__,
    }


def _normalise(obj):
    return json.loads(json.dumps(obj, sort_keys=True))


def replay_certificate(doc: dict) -> list[dict]:
    """Re-execute every recorded step; return the steps whose results differ."""
    mismatches = []
    for step in doc["certificate"]:
        inputs = {k: v for k, v in step["inputs"].items()}
        got = _normalise(STEP_OPS[step["op"]](**inputs))
        if got != _normalise(step["result"]):
            mismatches.append({"step": step["index"], "op": step["op"], "expected": step["result"], "got": got})
    return mismatches


# -- cache -----------------------------------------------------------------

CACHE_ENV = "LUCASIEVE_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lucasieve"


class ResultCache:
    """Reports on disk, keyed by task, bounds, flags and version strings."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory else default_cache_dir()

    @staticmethod
    def key(task: SieveTask) -> str:
        blob = json.dumps({"task": task.to_dict(), "catalog": catalog_version(), "version": __version__},
                          sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:32]

    def path(self, task: SieveTask) -> Path:
        return self.directory / f"{self.key(task)}.json"

    def get(self, task: SieveTask) -> dict | None:
        path = self.path(task)
        if not path.exists():
            return None
        with path.open() as fh:
            return json.load(fh)

    def put(self, task: SieveTask, doc: dict) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(task)
        tmp = path.with_suffix(".tmp")
        with tmp.open("w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
        tmp.replace(path)
        return path

    def entries(self) -> list[Path]:
        if not self.directory.exists():
            return []
        return sorted(self.directory.glob("*.json"))

    def clear(self) -> int:
        paths = self.entries()
        for path in paths:
            path.unlink()
        return len(paths)


def revalidate_solutions(doc: dict) -> bool:
    """Every recorded solution reproduces its target through the Hecke recurrence."""
    for sol in doc["solutions"] + doc["rejected_solutions"]:
        rec = SolutionRecord(sol["p"], sol["a_abs"], sol["d"], sol["target"], sol["k"], sol["chi_p"])
        if not rec.revalidate():
            return False
    return True


def check_cached(doc: dict) -> bool:
    """Cheap replay for cache hits: all non-solver steps plus exact revalidation."""
    light = dict(doc, certificate=[s for s in doc["certificate"] if s["op"] != "solve"])
    return not replay_certificate(light) and revalidate_solutions(doc)


def sieve_report(task: SieveTask, cache: ResultCache | None = None) -> dict:
    if cache is not None:
        hit = cache.get(task)
        if hit is not None and check_cached(hit):
            return hit
    doc = _normalise(report(task, run_sieve(task)))
    if cache is not None:
        cache.put(task, doc)
    return doc


# -- published lists ------------------------------------------------------------

R3_EXCLUDED = (-1, 1, 5, -7, 11, -13, 17, 23, -37, -43, 47, 53, 59, -61, -67, 71, -73, 83, 89, -97)
R5_EXCLUDED = (-1, 1, -11, 19, 29, -31, -41, 59, -61, -71, 79, 89, -691)
R3_LOCATED = {29: (13, 2), 41: (43, 4), -19: (7, 2), -31: (7, 4), -79: (167, 8)}
R3_SQUARE_FAMILY = (7, 13, 19, 31, 37)
# ell mod 5 -> residues of p for the n = p^2 family
R5_SQUARE_FAMILY = {1: (4,), 2: (2,), 3: (1, 3)}
R5_FAMILY_EXCEPTIONS = {-3, 3}
# located value whose witness violates the mod-3 congruence
EXPECTED_TENSIONS = {(-79, 3)}


def batch_targets() -> list[int]:
    primes = [p for p in range(3, 100, 2) if is_prime(p)]
    return sorted({1, -1, -691} | set(primes) | {-p for p in primes}, key=lambda x: (abs(x), x))


def _expected(ell: int, r: int):
    if r == 3:
        if ell in R3_EXCLUDED:
            return {"kind": "excluded"}
        if ell in R3_LOCATED:
            return {"kind": "located_quartic", "witness": R3_LOCATED[ell]}
        if ell in R3_SQUARE_FAMILY:
            return {"kind": "square_family", "residues": (2,)}
        return None
    if ell in R5_EXCLUDED:
        return {"kind": "excluded"}
    if ell % 5 in R5_SQUARE_FAMILY and ell not in R5_FAMILY_EXCEPTIONS and abs(ell) != 1:
        return {"kind": "square_family", "residues": R5_SQUARE_FAMILY[ell % 5]}
    return None


def compare_with_published(doc: dict) -> dict:
    ell, r = doc["task"]["ell"], doc["task"]["r"]
    exp = _expected(ell, r)
    entry = {"ell": ell, "r": r, "verdict": doc["verdict"], "expected": exp}
    if exp is None:
        entry["status"] = "no_reference"
        return entry
    kind = exp["kind"]
    if kind == "excluded":
        ok = doc["verdict"] in (EXCLUDED_PROVED, EXCLUDED_BOUNDED)
    elif kind == "located_quartic":
        p, a = exp["witness"]
        found = {(s["p"], s["a_abs"]) for s in doc["solutions"] if s["d"] == 5}
        ok = doc["verdict"] == LOCATED and found == {(p, a)} and not doc["families"]
        if (ell, r) in EXPECTED_TENSIONS:
            raw = {(s["p"], s["a_abs"]) for s in doc["rejected_solutions"] if s["d"] == 5}
            entry["status"] = "expected_tension" if (p, a) in raw else "discrepancy"
            entry["note"] = (f"witness ({p}, +-{a}) solves the quartic but fails the mod-{r} congruence"
                             if (p, a) in raw else "witness not reproduced")
            return entry
    else:
        fams = doc["families"]
        ok = (doc["verdict"] == LOCATED and len(fams) == 1
              and tuple(fams[0]["p_residues_mod_r"]) == tuple(exp["residues"]))
        if doc["solutions"]:
            # the family clauses say nothing about higher d; extra hits are new locations
            entry["extra_locations"] = [(s["p"], s["a_abs"], s["d"]) for s in doc["solutions"]]
    entry["status"] = "match" if ok else "discrepancy"
    return entry


def _run_one(args) -> dict:
    ell, r, y_bound, a_bound, cache_dir = args
    task = SieveTask(ell, 2, r, y_bound=y_bound, a_bound=a_bound)
    cache = ResultCache(cache_dir) if cache_dir else None
    return sieve_report(task, cache)


def reproduce_published_lists(y_bound: int = DEFAULT_Y_BOUND, a_bound: int = DEFAULT_A_BOUND,
                              jobs: int | None = 1, cache_dir: str | None = None,
                              targets: list[int] | None = None) -> dict:
    """Batch every odd |l| < 100 (and -691) in both torsion contexts and diff against the published lists."""
    targets = targets if targets is not None else batch_targets()
    work = [(ell, r, y_bound, a_bound, cache_dir) for r in (3, 5) for ell in targets]
    if jobs == 1:
        docs = [_run_one(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            docs = list(pool.map(_run_one, work))
    entries = [compare_with_published(doc) for doc in docs]
    return {
        "bounds": {"y_bound": y_bound, "a_bound": a_bound},
        "catalog_version": catalog_version(),
        "entries": entries,
        "discrepancies": [e for e in entries if e["status"] == "discrepancy"],
        "tensions": [e for e in entries if e["status"] == "expected_tension"],
        "reports": docs,
    }
