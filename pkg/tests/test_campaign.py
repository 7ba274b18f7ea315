import json
from fractions import Fraction

import pytest

import beideals.campaign as campaign
from beideals.algebra import InputError
from beideals.ek import EkVerdict
from beideals.campaign import (
    CHECKS,
    CampaignConfig,
    campaign_exit_code,
    cut_structure,
    make_counterexample,
    replay,
    run_campaign,
)


@pytest.fixture(scope="module")
def default_report():
    return run_campaign(CampaignConfig())


def test_default_campaign_is_clean(default_report):
    r = default_report
    assert r.violations() == 0
    assert r.counterexamples == []
    assert campaign_exit_code(r) == 0
    for c in CHECKS:
        assert r.tallies[c]["checked"] > 0, c
        t = r.tallies[c]
        assert t["checked"] == t["passed"] + t["vacuous"] + t["violations"]


def test_default_universe(default_report):
    u = default_report.universe
    assert {n: u[n]["algebras"] for n in u} == {"1": 1, "2": 1, "3": 6}
    assert {n: u[n]["functions"] for n in u} == {"1": 5, "2": 25, "3": 750}
    assert sum(v["instances"] for v in u.values()) == 780 * 4


def test_findings(default_report):
    kinds = {f["kind"] for f in default_report.findings}
    assert {
        "cut_structure_discrepancy",
        "example2_threshold_window",
        "transitive_not_self_distributive",
        "transitive_vs_self_distributive",
        "boundary_tight_instances",
    } <= kinds
    tns = next(f for f in default_report.findings if f["kind"] == "transitive_not_self_distributive")
    assert tns["algebra"] is not None and len(tns["algebra"]["elements"]) == 3


def test_cut_structure_of_example1(ex1):
    _, f = ex1
    assert cut_structure(f) == {
        "[-1,-0.7)": [],
        "[-0.7,-0.2)": ["1", "α", "h"],
        "[-0.2,0)": ["1", "α", "h", "m", "0"],
        "0": ["1", "α", "h", "m", "0"],
    }


def test_sampled_sizes_run():
    cfg = CampaignConfig(max_size=4, algebra_samples=3, function_samples=4, subset_samples=10, fixtures=False)
    r = run_campaign(cfg)
    assert r.universe["4"]["algebras"] == 3
    assert r.universe["4"]["functions"] == 12
    assert r.violations() == 0


def test_config_round_trip_and_validation():
    cfg = CampaignConfig.from_dict({"max_size": 2, "step": "1/2", "k_grid": ["0", "-1/2"], "seed": 3})
    assert cfg.step == Fraction(1, 2)
    assert cfg.k_grid == (0, Fraction(-1, 2))
    assert cfg.as_dict()["k_grid"] == ["0", "-0.5"]
    with pytest.raises(InputError):
        CampaignConfig.from_dict({"bogus": 1})
    with pytest.raises(InputError):
        CampaignConfig(step=Fraction(2, 3))
    with pytest.raises(InputError):
        CampaignConfig(k_grid=(Fraction(-1),))


def test_report_is_deterministic():
    cfg = CampaignConfig(max_size=4, exhaustive_max=2, algebra_samples=4, function_samples=6, subset_samples=20, seed=11)
    a = run_campaign(cfg).to_json()
    b = run_campaign(cfg).to_json()
    c = run_campaign(CampaignConfig(**{**cfg.__dict__, "workers": 2})).to_json()
    assert a == b == c
    json.loads(a)


def test_broken_checker_is_caught_and_replays(monkeypatch):
    """Swap in a th4 that forgets beta: the campaign must flag and replay the disagreement."""

    def no_beta(f, k):
        t, v, n = f.algebra.table, f.values, f.algebra.size
        ok = all(v[t[x][y]] <= v[y] for x in range(n) for y in range(n))
        return EkVerdict(ok, None, method="th4")

    monkeypatch.setattr(campaign, "is_ek_ideal_th4", no_beta)
    r = run_campaign(CampaignConfig(max_size=2, k_grid=(Fraction(0),), fixtures=False, exploratory=False))
    assert r.tallies["th4_equivalence"]["violations"] > 0
    assert campaign_exit_code(r) == 3
    ces = [c for c in r.counterexamples if c["check"] == "th4_equivalence"]
    assert ces and all(replay(c) for c in ces)
    monkeypatch.undo()
    # with the real checker the same instances are no longer counterexamples
    assert not any(replay(c) for c in ces)


def test_replay_rejects_non_counterexamples(ex1):
    A, f = ex1
    for check in ("th4_equivalence", "th5", "pro2", "th6_equivalence", "levels_equivalence", "promotion", "q_theorem"):
        assert not replay(make_counterexample(check, A, f, Fraction(0)))
    assert not replay(make_counterexample("lemma1", A, subset={0}))
    with pytest.raises(InputError):
        replay(make_counterexample("nope", A))
