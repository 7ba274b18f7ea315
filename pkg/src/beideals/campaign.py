"""Theorem-verification campaigns over enumerated algebras and grid N-functions.

A campaign is split into one task per algebra. Tasks are pure, so they
can run in a process pool; results are merged in task order, which
makes the report independent of the worker count.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import BEAlgebra, InputError, is_self_distributive, is_transitive, leq
from .ek import (
    Q_K_LOW,
    check_n_ideal_promotion,
    check_pro2,
    check_q_theorem,
    check_th5,
    definition_violations,
    is_ek_ideal_definition,
    is_ek_ideal_levels,
    is_ek_ideal_th4,
    is_ek_ideal_th6,
)
from .fixtures import EXAMPLE2_WINDOW, example1, example2, example2_k_grid
from .ideals import is_ideal_def, is_ideal_lemma, subset_of
from .io import algebra_doc
from .nstructures import NFunction, beta, check_k, critical_thresholds, cut, fmt, is_n_ideal, is_n_ideal_dense, to_rational
from .search import EnumerationConfig, enumerate_n_functions, enumerate_tables, grid_values

# checks whose violation means two deciders of the same notion disagree
EQUIVALENCES = (
    "lemma1",
    "characteristic_embedding",
    "n_ideal_dense_oracle",
    "th4_equivalence",
    "th6_equivalence",
    "levels_equivalence",
)
IMPLICATIONS = (
    "sd_implies_transitive",
    "n_ideal_consequences",
    "th5",
    "pro2",
    "promotion",
    "q_theorem",
    "k_monotonicity",
)
CHECKS = EQUIVALENCES + IMPLICATIONS
MAX_LISTED = 50


@dataclass(frozen=True)
class CampaignConfig:
    max_size: int = 3
    step: Fraction = Fraction(1, 4)
    k_grid: tuple = (Fraction(0), Fraction(-1, 4), Fraction(-1, 2), Fraction(-3, 4))
    exhaustive_max: int = 3
    algebra_samples: int = 20
    function_samples: int = 50
    subset_samples: int = 200
    seed: int = 0
    workers: int = 1
    fixtures: bool = True
    exploratory: bool = True

    def __post_init__(self):
        object.__setattr__(self, "step", to_rational(self.step))
        grid_values(self.step)
        object.__setattr__(self, "k_grid", tuple(sorted({check_k(k) for k in self.k_grid}, reverse=True)))
        if not 1 <= self.max_size <= 6:
            raise InputError("max_size must lie in [1, 6]")
        if self.workers < 1:
            raise InputError("workers must be positive")

    @classmethod
    def from_dict(cls, doc: dict) -> "CampaignConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise InputError(f"unknown campaign settings: {sorted(unknown)}")
        doc = dict(doc)
        if "k_grid" in doc:
            doc["k_grid"] = tuple(to_rational(str(k)) for k in doc["k_grid"])
        if "step" in doc:
            doc["step"] = to_rational(str(doc["step"]))
        return cls(**doc)

    def as_dict(self) -> dict:
        return {
            "max_size": self.max_size,
            "step": fmt(self.step),
            "k_grid": [fmt(k) for k in self.k_grid],
            "exhaustive_max": self.exhaustive_max,
            "algebra_samples": self.algebra_samples,
            "function_samples": self.function_samples,
            "subset_samples": self.subset_samples,
            "seed": self.seed,
            "fixtures": self.fixtures,
            "exploratory": self.exploratory,
        }


def new_tally() -> dict:
    return {"checked": 0, "passed": 0, "vacuous": 0, "violations": 0}


@dataclass
class CampaignReport:
    config: dict = field(default_factory=dict)
    universe: dict = field(default_factory=dict)
    tallies: dict = field(default_factory=lambda: {c: new_tally() for c in CHECKS})
    subuniverses: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    fixtures: dict = field(default_factory=dict)

    def violations(self, names=CHECKS) -> int:
        return sum(self.tallies[c]["violations"] for c in names)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "universe": self.universe,
            "tallies": self.tallies,
            "subuniverses": self.subuniverses,
            "counterexamples": self.counterexamples,
            "findings": self.findings,
            "fixtures": self.fixtures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _jsonable(w):
    if isinstance(w, Fraction):
        return fmt(w)
    if isinstance(w, dict):
        return {k: _jsonable(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_jsonable(v) for v in w]
    return w


def make_counterexample(check: str, A: BEAlgebra, f: Optional[NFunction] = None, k=None, witness=None, subset=None) -> dict:
    ce = {"check": check, "algebra": algebra_doc(A)}
    if f is not None:
        ce["function"] = f.as_mapping()
    if k is not None:
        ce["k"] = fmt(k)
    if subset is not None:
        ce["subset"] = [A.names[i] for i in sorted(subset)]
    if witness is not None:
        ce["witness"] = _jsonable(witness)
    return ce


class _Recorder:
    """Accumulates tallies and counterexamples for one task."""

    def __init__(self):
        self.tallies = {c: new_tally() for c in CHECKS}
        self.counterexamples = []
        self.findings = []

    def record(self, check: str, hypotheses_met: bool, holds: bool, ce=None):
        t = self.tallies[check]
        t["checked"] += 1
        if not hypotheses_met:
            t["vacuous"] += 1
        elif holds:
            t["passed"] += 1
        else:
            t["violations"] += 1
            if ce is not None and t["violations"] <= MAX_LISTED:
                self.counterexamples.append(ce())


# -- per-structure checks, shared by campaigns and replay ------------------


def n_ideal_consequence_violation(f: NFunction) -> Optional[dict]:
    A = f.algebra
    t = A.table
    v = f.values
    n = A.size
    for x in range(n):
        if v[0] > v[x]:
            return {"clause": "unit", "x": x}
    for x in range(n):
        for y in range(n):
            if v[t[t[x][y]][y]] > v[x]:
                return {"clause": "(x*y)*y", "x": x, "y": y}
    for x in range(n):
        for y in range(n):
            if v[y] > max(v[x], v[t[x][y]]):
                return {"clause": "max", "x": x, "y": y}
    for x in range(n):
        for y in range(n):
            if leq(A, x, y) and v[y] > v[x]:
                return {"clause": "order", "x": x, "y": y}
    return None


def tight_at_beta(f: NFunction, k: Fraction) -> bool:
    """Some closed-form inequality holds only with equality at beta."""
    b = beta(k)
    t = f.algebra.table
    v = f.values
    n = f.algebra.size
    for x in range(n):
        for y in range(n):
            if v[t[x][y]] == b and v[y] < b:
                return True
            for z in range(n):
                if v[t[t[x][t[y][z]]][z]] == b and max(v[x], v[y]) < b:
                    return True
    return False


def _check_algebra(rec: _Recorder, A: BEAlgebra, subset_rng: Optional[random.Random], subset_samples: int):
    n = A.size
    if subset_rng is None:
        masks = range(1, 1 << n)
    else:
        masks = [subset_rng.randrange(1, 1 << n) for _ in range(subset_samples)]
    for m in masks:
        I = subset_of(m)
        d = is_ideal_def(A, I).ok
        lem = is_ideal_lemma(A, I).ok
        rec.record("lemma1", True, d == lem, lambda: make_counterexample("lemma1", A, subset=I, witness={"def": d, "lemma": lem}))
        fI = NFunction.characteristic(A, I)
        ni = is_n_ideal(fI).ok
        rec.record(
            "characteristic_embedding", True, ni == d,
            lambda: make_counterexample("characteristic_embedding", A, subset=I, witness={"def": d, "n_ideal": ni}),
        )
    sd = is_self_distributive(A).ok
    tr = is_transitive(A)
    rec.record("sd_implies_transitive", sd, tr.ok, lambda: make_counterexample("sd_implies_transitive", A, witness=tr.witness))


def _check_function(rec: _Recorder, f: NFunction, k_grid, transitive: bool, exploratory: bool):
    A = f.algebra
    ni = is_n_ideal(f)
    dense = is_n_ideal_dense(f)
    rec.record(
        "n_ideal_dense_oracle", True, ni.ok == dense.ok,
        lambda: make_counterexample("n_ideal_dense_oracle", A, f, witness={"image_scan": ni.ok, "dense": dense.ok}),
    )
    w = n_ideal_consequence_violation(f) if ni.ok else None
    rec.record("n_ideal_consequences", ni.ok, w is None, lambda: make_counterexample("n_ideal_consequences", A, f, witness=w))

    accepted = {}
    tight = 0
    for k in k_grid:
        d = is_ek_ideal_definition(f, k)
        t4 = is_ek_ideal_th4(f, k)
        accepted[k] = t4.ok
        rec.record(
            "th4_equivalence", True, d.ok == t4.ok,
            lambda: make_counterexample("th4_equivalence", A, f, k, {"definition": d.ok, "th4": t4.ok, "definition_witness": d.witness, "th4_witness": t4.witness}),
        )
        if t4.ok and tight_at_beta(f, k):
            tight += 1
        r5 = check_th5(f, k)
        rec.record("th5", t4.ok, r5.holds, lambda: make_counterexample("th5", A, f, k, r5.witness))
        p2 = check_pro2(f, k)
        rec.record("pro2", p2.hypotheses_met, p2.holds, lambda: make_counterexample("pro2", A, f, k, p2.witness))
        if not transitive:
            continue
        t6 = is_ek_ideal_th6(f, k)
        rec.record(
            "th6_equivalence", True, t6.ok == t4.ok,
            lambda: make_counterexample("th6_equivalence", A, f, k, {"th4": t4.ok, "th6": t6.ok}),
        )
        lv = is_ek_ideal_levels(f, k)
        rec.record(
            "levels_equivalence", True, lv.ok == t4.ok,
            lambda: make_counterexample("levels_equivalence", A, f, k, {"th4": t4.ok, "levels": lv.ok, "levels_witness": lv.witness}),
        )
        pr = check_n_ideal_promotion(f, k)
        rec.record("promotion", pr.hypotheses_met, pr.holds, lambda: make_counterexample("promotion", A, f, k, pr.witness))
        if Q_K_LOW < k:
            q = check_q_theorem(f, k)
            rec.record("q_theorem", q.hypotheses_met, q.holds, lambda: make_counterexample("q_theorem", A, f, k, q.witness))
        elif exploratory:
            q = check_q_theorem(f, k, exploratory=True)
            if q.hypotheses_met and not q.holds:
                rec.findings.append({
                    "kind": "q_theorem_outside_k_range",
                    "detail": make_counterexample("q_theorem", A, f, k, q.witness),
                })

    ks = sorted(k_grid)
    for i, k in enumerate(ks):
        lower = [k2 for k2 in ks[:i] if not accepted[k2]]
        ok = not (accepted[k] and lower)
        rec.record(
            "k_monotonicity", accepted[k], ok,
            lambda: make_counterexample("k_monotonicity", A, f, k, {"rejected_at": [fmt(x) for x in lower]}),
        )
    return tight


def _task(args) -> dict:
    table, functions, subset_seed, cfg = args
    A = BEAlgebra.from_table(table)
    rec = _Recorder()
    rng = None if subset_seed is None else random.Random(subset_seed)
    _check_algebra(rec, A, rng, cfg["subset_samples"])
    transitive = is_transitive(A).ok
    sd = is_self_distributive(A).ok
    k_grid = [Fraction(k) for k in cfg["k_grid"]]
    step = Fraction(cfg["step"])
    if functions is None:
        fs = enumerate_n_functions(A, step)
    else:
        fs = enumerate_n_functions(A, step, sample=functions[0], seed=functions[1])
    tight = 0
    n_functions = 0
    for f in fs:
        n_functions += 1
        tight += _check_function(rec, f, k_grid, transitive, cfg["exploratory"])
    return {
        "size": A.size,
        "transitive": transitive,
        "self_distributive": sd,
        "functions": n_functions,
        "tight": tight,
        "tallies": rec.tallies,
        "counterexamples": rec.counterexamples,
        "findings": rec.findings,
    }


def plan_tasks(config: CampaignConfig) -> list:
    """One task per algebra; samples are seeded from (seed, size, position)."""
    cfg = {
        "k_grid": [str(k) for k in config.k_grid],
        "step": str(config.step),
        "subset_samples": config.subset_samples,
        "exploratory": config.exploratory,
    }
    tasks = []
    for n in range(1, config.max_size + 1):
        if n <= config.exhaustive_max:
            tables = enumerate_tables(EnumerationConfig(n, size_cap=6))
            for t in tables:
                tasks.append((t, None, None, cfg))
            continue
        reps = enumerate_tables(EnumerationConfig(n, up_to_iso=True, size_cap=6))
        rng = random.Random(f"{config.seed}:algebras:{n}")
        picked = sorted(rng.sample(reps, min(config.algebra_samples, len(reps))))
        for i, t in enumerate(picked):
            fseed = f"{config.seed}:functions:{n}:{i}"
            tasks.append((t, (config.function_samples, fseed), f"{config.seed}:subsets:{n}:{i}", cfg))
    return tasks


def _sub_key(tr: bool, sd: bool) -> str:
    if sd:
        return "self_distributive"
    return "transitive_not_sd" if tr else "not_transitive"


def cut_structure(f: NFunction) -> dict:
    """Cut on each half-open interval between breakpoints, plus at t = 0."""
    A = f.algebra
    out = {}
    for lo, hi, _ in critical_thresholds(f).intervals():
        out[f"[{fmt(lo)},{fmt(hi)})"] = [A.names[i] for i in sorted(cut(f, lo))]
    out["0"] = [A.names[i] for i in sorted(cut(f, Fraction(0)))]
    return out


def _fixture_section() -> tuple:
    findings = []
    A1, f1 = example1()
    I = frozenset(A1.index(a) for a in ("1", "α", "h"))
    X = frozenset(range(A1.size))
    c01 = cut(f1, Fraction(-1, 10))
    ex1 = {
        "axioms": True,
        "ideal_1_alpha_h": is_ideal_def(A1, I).ok,
        "n_ideal": is_n_ideal(f1).ok,
        "cuts": {fmt(t): [A1.names[i] for i in sorted(cut(f1, t))] for t in (Fraction(-8, 10), Fraction(-7, 10), Fraction(-45, 100), Fraction(-2, 10), Fraction(-1, 10), Fraction(0))},
    }
    if c01 == X:
        findings.append({
            "kind": "cut_structure_discrepancy",
            "detail": "Example 1 displays C(f;t) = {1,α,h} on [-0.7, 0], but f(m) = f(0) = -0.2 puts every element in C(f;t) for t in [-0.2, 0]; the N-ideal verdict is unchanged since X is an ideal",
            "computed": cut_structure(f1),
        })

    A2, f2 = example2()
    ex2 = {"transitive": is_transitive(A2).ok, "k": {}}
    for k in example2_k_grid():
        row = {}
        for name, fn in (("definition", is_ek_ideal_definition), ("th4", is_ek_ideal_th4), ("th6", is_ek_ideal_th6), ("levels", is_ek_ideal_levels)):
            row[name] = fn(f2, k).ok
        row["definition_window"] = is_ek_ideal_definition(f2, k, window=EXAMPLE2_WINDOW).ok
        ex2["k"][fmt(k)] = row
    full = all(r["definition"] for r in ex2["k"].values())
    windowed = all(r["definition_window"] for r in ex2["k"].values())
    findings.append({
        "kind": "example2_threshold_window",
        "detail": "Example 2 restricts t, r to [-0.7, -0.3); verdicts over that window and over all of [-1, 0)",
        "full_domain": full,
        "window": windowed,
    })
    return {"example1": ex1, "example2": ex2}, findings


def run_campaign(config: CampaignConfig) -> CampaignReport:
    tasks = plan_tasks(config)
    if config.workers == 1 or len(tasks) < 2:
        results = [_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            results = list(ex.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * config.workers))))

    report = CampaignReport(config=config.as_dict())
    universe = {}
    subs = {}
    tight_total = 0
    for res in results:
        u = universe.setdefault(str(res["size"]), {"algebras": 0, "transitive": 0, "self_distributive": 0, "functions": 0, "instances": 0})
        u["algebras"] += 1
        u["transitive"] += res["transitive"]
        u["self_distributive"] += res["self_distributive"]
        u["functions"] += res["functions"]
        u["instances"] += res["functions"] * len(config.k_grid)
        key = _sub_key(res["transitive"], res["self_distributive"])
        sub = subs.setdefault(key, {c: new_tally() for c in CHECKS})
        for c, t in res["tallies"].items():
            for field_, v in t.items():
                report.tallies[c][field_] += v
                sub[c][field_] += v
        tight_total += res["tight"]
        for ce in res["counterexamples"]:
            if len([x for x in report.counterexamples if x["check"] == ce["check"]]) < MAX_LISTED:
                report.counterexamples.append(ce)
        for fd in res["findings"]:
            if len(report.findings) < 4 * MAX_LISTED:
                report.findings.append(fd)
    report.universe = universe
    report.subuniverses = subs

    q_outside = [f for f in report.findings if f["kind"] == "q_theorem_outside_k_range"]
    outside_ks = [k for k in config.k_grid if k <= Q_K_LOW]
    if config.exploratory and outside_ks and not q_outside:
        report.findings.append({
            "kind": "q_theorem_outside_k_range",
            "detail": "no Q(f;t) violation found for k outside (-1/2, 0] on this universe",
            "k_probed": [fmt(k) for k in outside_ks],
        })
    report.findings.append({
        "kind": "boundary_tight_instances",
        "detail": "accepted (f, k) instances where a closed-form inequality holds only with equality at beta",
        "count": tight_total,
    })

    differing = [
        c for c in CHECKS
        if subs.get("self_distributive", {}).get(c, {}).get("violations", 0) != 0
        or subs.get("transitive_not_sd", {}).get(c, {}).get("violations", 0) != 0
    ]
    report.findings.append({
        "kind": "transitive_vs_self_distributive",
        "detail": "checks whose outcome differs between the self-distributive and the transitive-but-not-self-distributive algebras",
        "differing_checks": differing,
    })
    witness = _transitive_not_sd(config.max_size)
    report.findings.append({
        "kind": "transitive_not_self_distributive",
        "detail": "smallest transitive BE-algebra that is not self-distributive" if witness else "none up to the campaign size",
        "algebra": witness,
    })

    if config.fixtures:
        report.fixtures, fx_findings = _fixture_section()
        report.findings.extend(fx_findings)
    return report


def _transitive_not_sd(max_size: int) -> Optional[dict]:
    for n in range(1, min(max_size, 4) + 1):
        for t in enumerate_tables(EnumerationConfig(n, filter="transitive", up_to_iso=True)):
            A = BEAlgebra.from_table(t)
            if not is_self_distributive(A).ok:
                return algebra_doc(A)
    return None


def campaign_exit_code(report: CampaignReport) -> int:
    if report.violations(EQUIVALENCES):
        return 3
    if report.violations(IMPLICATIONS):
        return 1
    return 0


# -- replay -----------------------------------------------------------------


def replay(ce: dict) -> bool:
    """Re-run the check named in a counterexample; True if it still fails."""
    A = BEAlgebra.from_labels(ce["algebra"]["elements"], ce["algebra"]["table"])
    f = NFunction.from_mapping(A, ce["function"]) if "function" in ce else None
    k = to_rational(ce["k"]) if "k" in ce else None
    check = ce["check"]
    if check == "lemma1":
        I = [A.index(a) for a in ce["subset"]]
        return is_ideal_def(A, I).ok != is_ideal_lemma(A, I).ok
    if check == "characteristic_embedding":
        I = [A.index(a) for a in ce["subset"]]
        return is_n_ideal(NFunction.characteristic(A, I)).ok != is_ideal_def(A, I).ok
    if check == "sd_implies_transitive":
        return is_self_distributive(A).ok and not is_transitive(A).ok
    if check == "n_ideal_dense_oracle":
        return is_n_ideal(f).ok != is_n_ideal_dense(f).ok
    if check == "n_ideal_consequences":
        return is_n_ideal(f).ok and n_ideal_consequence_violation(f) is not None
    if check == "th4_equivalence":
        return is_ek_ideal_definition(f, k).ok != is_ek_ideal_th4(f, k).ok
    if check == "th6_equivalence":
        return is_ek_ideal_th6(f, k).ok != is_ek_ideal_th4(f, k).ok
    if check == "levels_equivalence":
        return is_ek_ideal_levels(f, k).ok != is_ek_ideal_th4(f, k).ok
    if check == "th5":
        return is_ek_ideal_th4(f, k).ok and not check_th5(f, k).holds
    if check == "pro2":
        r = check_pro2(f, k)
        return r.hypotheses_met and not r.holds
    if check == "promotion":
        r = check_n_ideal_promotion(f, k)
        return r.hypotheses_met and not r.holds
    if check == "q_theorem":
        r = check_q_theorem(f, k, exploratory=True)
        return r.hypotheses_met and not r.holds
    if check == "k_monotonicity":
        lower = [to_rational(x) for x in ce["witness"]["rejected_at"]]
        return is_ek_ideal_th4(f, k).ok and any(not is_ek_ideal_th4(f, x).ok for x in lower)
    raise InputError(f"unknown check {check!r}")


def definition_witness_replays(f: NFunction, k, witness: dict) -> bool:
    """True if ``witness`` is among the definition's violations."""
    return any(w == witness for w in definition_violations(f, k))
