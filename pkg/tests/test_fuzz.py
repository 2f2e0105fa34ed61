from e3geo.ast import TheoremStatement
from e3geo.fuzz import fuzz_rule, fuzzable
from e3geo.parser import parse_theorem
from e3geo.rules import Origin, Rule, RuleKind


def test_between_symm_clean(rules):
    res = fuzz_rule(rules.lookup("between_symm"), trials=1000, seed=7)
    assert res.ok and res.filtered_trials == 1000


def test_pasch_3_clean(rules):
    res = fuzz_rule(rules.lookup("pasch_3"), trials=1000, seed=7)
    assert res.ok and res.filtered_trials == 1000


def test_corrupted_between_symm_caught():
    # between a b c -> between b a c is false; the canary must be caught
    bad = parse_theorem("∀ (a b c : Point), between a b c → between b a c")
    rule = Rule("between_symm_corrupted", bad, RuleKind.DIAGRAMMATIC, Origin.BUILTIN, core=False)
    res = fuzz_rule(rule, trials=1000, seed=7)
    assert not res.ok
    assert res.counterexample is not None


def test_corrupted_metric_rule_caught():
    bad = parse_theorem("∀ (a b c : Point), between a b c → |(a--b)| = |(b--c)|")
    rule = Rule("midpoint_fantasy", bad, RuleKind.TRANSFER, Origin.BUILTIN, core=False)
    res = fuzz_rule(rule, trials=500, seed=3)
    assert not res.ok


def test_construction_rules_not_fuzzable(rules):
    assert not fuzzable(rules.lookup("circle_from_points"))
    assert not fuzzable(rules.lookup("superposition"))
    assert fuzzable(rules.lookup("between_if"))


def test_metric_completion_axiom_clean():
    # the encoder-level completion axiom is fuzzed like any metric rule
    stmt = parse_theorem(
        "∀ (x y z : Point), x ≠ y ∧ y ≠ z ∧ |(x--y)| + |(y--z)| = |(x--z)| → between x y z"
    )
    rule = Rule("metric_completion", stmt, RuleKind.METRIC, Origin.BUILTIN, core=False)
    res = fuzz_rule(rule, trials=1000, seed=11)
    assert res.ok and res.filtered_trials == 1000


def test_lines_intersect_existential_witness_search(rules):
    res = fuzz_rule(rules.lookup("lines_intersect"), trials=300, seed=5)
    assert res.ok
    assert res.filtered_trials == 300


def test_filtered_trial_determinism(rules):
    r1 = fuzz_rule(rules.lookup("pasch_1"), trials=50, seed=42)
    r2 = fuzz_rule(rules.lookup("pasch_1"), trials=50, seed=42)
    assert (r1.filtered_trials, r1.attempts, r1.skipped) == (
        r2.filtered_trials,
        r2.attempts,
        r2.skipped,
    )
