"""Exit criteria. Each test records one PASS/FAIL line, shown in the terminal summary."""

import itertools
import json
import random
import time
from fractions import Fraction

import pytest

from beideals.algebra import BEAlgebra, is_self_distributive, is_transitive, validate_be_algebra
from beideals.campaign import _fixture_section, n_ideal_consequence_violation
from beideals.cli import main
from beideals.ek import (
    check_n_ideal_promotion,
    check_q_theorem,
    check_th5,
    is_ek_ideal_definition,
    is_ek_ideal_levels,
    is_ek_ideal_th4,
    is_ek_ideal_th6,
)
from beideals.fixtures import EXAMPLE1_ELEMENTS, EXAMPLE1_TABLE, example1, example2, example2_k_grid
from beideals.ideals import is_ideal_def, is_ideal_lemma, subset_of
from beideals.nstructures import beta, cut, is_n_ideal
from beideals.search import (
    EnumerationConfig,
    canonical_form,
    enumerate_n_functions,
    enumerate_tables,
    labeled_tables,
    naive_tables,
)

K_GRID = [Fraction(0), Fraction(-1, 4), Fraction(-1, 2), Fraction(-3, 4)]
STEP = Fraction(1, 4)

# pinned from the naive filter oracle (every assignment of the 6 free cells)
SIZE4_LABELED = 250
SIZE4_UP_TO_ISO = 51


@pytest.fixture(scope="module")
def small_algebras():
    return [BEAlgebra.from_table(t) for n in (1, 2, 3) for t in labeled_tables(n)]


def test_criterion_1_example1(criterion):
    start = time.perf_counter()
    report = validate_be_algebra(EXAMPLE1_ELEMENTS, EXAMPLE1_TABLE)
    A, f = example1()
    I = {A.index(a) for a in ("1", "α", "h")}
    ideal = is_ideal_def(A, I).ok
    n_ideal = is_n_ideal(f).ok
    assert f.values == tuple(Fraction(v) for v in ("-0.7", "-0.7", "-0.7", "-0.2", "-0.2"))
    whole = cut(f, Fraction(-1, 10)) == frozenset(range(A.size))
    _, findings = _fixture_section()
    flagged = any(fd["kind"] == "cut_structure_discrepancy" for fd in findings)
    elapsed = time.perf_counter() - start
    ok = report.passed and ideal and n_ideal and whole and flagged and elapsed < 1.0
    criterion(1, "Example 1: axioms, {1,α,h} ideal, N-ideal, C(f;-0.1)=X flagged", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_2_example2(criterion):
    start = time.perf_counter()
    _, f = example2()
    ks = example2_k_grid()
    assert [str(k) for k in ks][0] == "-19/20" and ks[-1] == Fraction(-9, 20) and len(ks) == 11
    methods = (is_ek_ideal_definition, is_ek_ideal_th4, is_ek_ideal_th6, is_ek_ideal_levels)
    results = {(k, m.__name__): m(f, k).ok for k in ks for m in methods}
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 5.0
    criterion(2, f"Example 2: all 4 methods true on {len(ks)} k values", ok, f"{elapsed:.3f}s")
    assert ok


def test_criterion_3_th4_equivalence(criterion, small_algebras):
    start = time.perf_counter()
    instances = disagreements = 0
    for A in small_algebras:
        for f in enumerate_n_functions(A, STEP):
            for k in K_GRID:
                instances += 1
                if is_ek_ideal_definition(f, k).ok != is_ek_ideal_th4(f, k).ok:
                    disagreements += 1
    elapsed = time.perf_counter() - start
    assert len(small_algebras) == 8
    assert instances == (5 + 5**2 + 6 * 5**3) * len(K_GRID)
    ok = disagreements == 0 and elapsed < 60.0
    criterion(3, "definition <=> th4 over sizes <= 3", ok, f"{instances} instances, {disagreements} disagreements, {elapsed:.1f}s")
    assert ok


@pytest.fixture(scope="module")
def transitive_sweep(small_algebras):
    """Decider outcomes and consequence checks for every transitive instance."""
    out = {"instances": 0, "dis_th6": 0, "dis_levels": 0, "th5": 0, "promotion": 0, "q": 0,
           "accepted": 0, "promoted": 0, "q_checked": 0}
    for A in small_algebras:
        transitive = is_transitive(A).ok
        for f in enumerate_n_functions(A, STEP):
            for k in K_GRID:
                t4 = is_ek_ideal_th4(f, k).ok
                if t4:
                    out["accepted"] += 1
                    out["th5"] += not check_th5(f, k).holds
                if not transitive:
                    continue
                out["instances"] += 1
                out["dis_th6"] += is_ek_ideal_th6(f, k).ok != t4
                out["dis_levels"] += is_ek_ideal_levels(f, k).ok != t4
                if t4 and f(0) > beta(k):
                    out["promoted"] += 1
                    r = check_n_ideal_promotion(f, k)
                    assert r.hypotheses_met
                    out["promotion"] += not is_n_ideal(f).ok
                if Fraction(-1, 2) < k:
                    r = check_q_theorem(f, k)
                    out["q_checked"] += r.hypotheses_met
                    out["q"] += r.hypotheses_met and not r.holds
    return out


def test_criterion_4_th6_levels_equivalence(criterion, transitive_sweep):
    s = transitive_sweep
    ok = s["instances"] > 0 and s["dis_th6"] == 0 and s["dis_levels"] == 0
    criterion(4, "th4 <=> th6 <=> levels on transitive algebras", ok,
              f"{s['instances']} instances, disagreements th6={s['dis_th6']} levels={s['dis_levels']}")
    assert ok


def test_criterion_5_consequences(criterion, transitive_sweep):
    s = transitive_sweep
    ok = s["th5"] == 0 and s["promotion"] == 0 and s["q"] == 0 and s["promoted"] > 0 and s["q_checked"] > 0
    criterion(5, "th5 / promotion / Q(f;t) consequences", ok,
              f"accepted={s['accepted']} promoted={s['promoted']} q_checked={s['q_checked']}, "
              f"violations th5={s['th5']} promotion={s['promotion']} q={s['q']}")
    assert ok


def test_criterion_6_n_ideal_consequences(criterion, small_algebras):
    checked = violations = 0
    structures = [f for A in small_algebras for f in enumerate_n_functions(A, STEP)] + [example1()[1]]
    for f in structures:
        if is_n_ideal(f).ok:
            checked += 1
            violations += n_ideal_consequence_violation(f) is not None
    ok = checked > 0 and violations == 0
    criterion(6, "N-ideal consequences", ok, f"{checked} N-ideals, {violations} violations")
    assert ok


def _sample_pool(n, per_partition, rng):
    pool = []
    for first in range(n):
        pool.extend(itertools.islice(labeled_tables(n, first), per_partition))
    return [BEAlgebra.from_table(t) for t in rng.sample(pool, min(len(pool), 200))]


def test_criterion_7_crisp_equivalence(criterion, small_algebras):
    exhaustive = dis = 0
    for A in small_algebras:
        for m in range(1, 1 << A.size):
            I = subset_of(m)
            exhaustive += 1
            dis += is_ideal_def(A, I).ok != is_ideal_lemma(A, I).ok
    sampled = {}
    rng = random.Random(2024)
    for n in (4, 5):
        algs = _sample_pool(n, 400, rng)
        count = 0
        for _ in range(1000):
            A = rng.choice(algs)
            I = subset_of(rng.randrange(1, 1 << n))
            count += 1
            dis += is_ideal_def(A, I).ok != is_ideal_lemma(A, I).ok
        sampled[n] = count
    ok = dis == 0 and sampled == {4: 1000, 5: 1000}
    criterion(7, "ideal definition <=> lemma characterization", ok,
              f"{exhaustive} exhaustive + {sum(sampled.values())} sampled subsets, {dis} disagreements")
    assert ok


def test_criterion_8_enumeration_counts(criterion):
    counts = {n: len(enumerate_tables(EnumerationConfig(n))) for n in (1, 2, 3, 4)}
    iso = {n: len(enumerate_tables(EnumerationConfig(n, up_to_iso=True))) for n in (3, 4)}
    naive3 = naive_tables(3)
    naive4 = naive_tables(4)
    oracle_iso3 = len({canonical_form(t) for t in naive3})
    oracle_iso4 = len({canonical_form(t) for t in naive4})
    stable = all(
        enumerate_tables(EnumerationConfig(4, workers=w)) == sorted(naive4) for w in (1, 2, 3)
    ) and enumerate_tables(EnumerationConfig(4, up_to_iso=True, workers=2)) == enumerate_tables(EnumerationConfig(4, up_to_iso=True))
    ok = (
        counts[1] == 1 and counts[2] == 1 and counts[3] == 6 and iso[3] == 4
        and len(naive3) == 6 and oracle_iso3 == 4
        and counts[4] == len(naive4) == SIZE4_LABELED and iso[4] == oracle_iso4 == SIZE4_UP_TO_ISO
        and stable
    )
    criterion(8, "enumeration counts", ok, f"labeled {counts}, up to iso {iso}, stable across workers={stable}")
    assert ok


def test_criterion_9_self_distributive_implies_transitive(criterion):
    total = sd = violations = 0
    witness = None
    for n in (1, 2, 3, 4):
        for t in labeled_tables(n):
            A = BEAlgebra.from_table(t)
            total += 1
            s = is_self_distributive(A).ok
            tr = is_transitive(A).ok
            sd += s
            violations += s and not tr
            if witness is None and tr and not s:
                witness = A
    ok = violations == 0 and witness is not None
    detail = f"{sd}/{total} self-distributive, {violations} not transitive; converse fails at order {witness.size if witness else '-'}"
    criterion(9, "self-distributive => transitive, converse fails", ok, detail)
    assert ok


def test_criterion_10_determinism(criterion, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_size": 4, "algebra_samples": 5, "function_samples": 8, "subset_samples": 30, "seed": 7}))
    outs = []
    for i, workers in enumerate((1, 1, 2)):
        out = tmp_path / f"r{i}.json"
        code = main(["verify-theorems", "--config", str(cfg), "--out", str(out), "--workers", str(workers)])
        capsys.readouterr()
        assert code == 0
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] == outs[2]
    criterion(10, "verify-theorems byte-identical across runs and worker counts", ok, f"{len(outs[0])} bytes")
    assert ok
