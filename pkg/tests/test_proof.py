import pytest

from e3geo.parser import parse_proof, parse_theorem
from e3geo.proof import check_proof
from e3geo.rules import register_theorem
from e3geo.smt import SolverConfig

from conftest import requires_solver

pytestmark = requires_solver


PROP1_PROOF = """euclid_intros
euclid_apply circle_from_points a b as BCD
euclid_apply circle_from_points b a as ACE
euclid_apply intersection_circles BCD ACE as c
euclid_apply point_on_circle_onlyif a b c BCD
euclid_apply point_on_circle_onlyif b a c ACE
use c
euclid_finish"""


def test_proposition_1_verifies_with_single_gap(prop1_statement, rules, cfg):
    report = check_proof(prop1_statement, parse_proof(PROP1_PROOF), rules, cfg)
    assert report.verified
    assert len(report.gaps) == 1
    gap = report.gaps[0]
    assert gap.rule == "intersection_circles"
    assert gap.missing == "intersectsCircle BCD ACE"
    assert gap.verdict == "unsat"


def test_circle_from_points_symmetric_inequality_no_gap(rules, cfg):
    # b ≠ a matches the fact a ≠ b on the syntactic path; no solver call
    thm = parse_theorem(
        "∀ (a b : Point), a ≠ b → ∃ α : Circle, isCentre b α ∧ onCircle a α"
    )
    proof = parse_proof("euclid_intros\neuclid_apply circle_from_points b a as BCD\nuse BCD\neuclid_finish")
    report = check_proof(thm, proof, rules, cfg)
    assert report.verified
    assert report.gaps == []


def test_apply_without_support_fails_with_non_unsat_gap(rules, quick_cfg):
    # two fresh circles: the coordinate oracle has disjoint models, so the
    # precondition query must not come back unsat
    thm = parse_theorem(
        "∀ (α β : Circle), α ≠ β → ∃ c : Point, onCircle c α ∧ onCircle c β"
    )
    proof = parse_proof("euclid_intros\neuclid_apply intersection_circles α β as c\nuse c\neuclid_finish")
    report = check_proof(thm, proof, rules, quick_cfg)
    assert not report.verified
    assert report.gaps and report.gaps[0].verdict in ("sat", "unknown", "timeout")
    assert any("intersection_circles" in f.reason for f in report.failures)


def test_arity_mismatch_is_a_failure(rules, quick_cfg):
    thm = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    proof = parse_proof("euclid_intros\neuclid_apply distinct_points a as (c, d)\nuse c\neuclid_finish")
    report = check_proof(thm, proof, rules, quick_cfg)
    assert not report.verified
    assert any("binders" in f.reason for f in report.failures)


def test_use_requires_constructed_object(rules, quick_cfg):
    thm = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    proof = parse_proof("euclid_intros\nuse z\neuclid_finish")
    report = check_proof(thm, proof, rules, quick_cfg)
    assert not report.verified
    assert any("not a constructed object" in f.reason for f in report.failures)


def test_fact_monotonicity_within_branch(rules, cfg, prop1_statement):
    # instrument: every tactic's output facts contain the input facts
    from e3geo import proof as proof_mod

    seen = []
    orig = proof_mod.ProofChecker._apply_tactic

    def spy(self, t):
        before = list(self.frames[0].facts)
        frame = self.frames[0]
        orig(self, t)
        if self.frames and self.frames[0] is frame:
            after = self.frames[0].facts
            seen.append(all(f in after for f in before))

    proof_mod.ProofChecker._apply_tactic = spy
    try:
        report = check_proof(prop1_statement, parse_proof(PROP1_PROOF), rules, cfg)
    finally:
        proof_mod.ProofChecker._apply_tactic = orig
    assert report.verified
    assert seen and all(seen)


def test_branch_isolation_in_by_cases(rules, quick_cfg):
    thm = parse_theorem(
        "∀ (a b : Point) (L : Line), onLine a L ∧ onLine b L → ∃ c : Point, c = c",
        strict=False,
    )
    proof = parse_proof(
        """euclid_intros
by_cases a = b
. euclid_assert a = b
  use a
  euclid_finish
. euclid_assert a ≠ b
  use a
  euclid_finish"""
    )
    report = check_proof(thm, proof, rules, quick_cfg)
    assert report.verified
    assert report.branch_outcomes.get("root.1") == "closed"
    assert report.branch_outcomes.get("root.2") == "closed"


def test_proposition_17_with_registered_helpers(rules, cfg, fixtures_dir):
    p13 = parse_theorem(
        "∀ (a b c d : Point) (AB CD : Line), AB ≠ CD ∧ distinctPointsOnLine a b AB ∧ "
        "distinctPointsOnLine c d CD ∧ between d b c → ∠ c:b:a + ∠ a:b:d = ∟ + ∟"
    )
    p16 = parse_theorem(
        "∀ (a b c d : Point) (AB BC AC : Line), formTriangle a b c AB BC AC ∧ "
        "between b c d → ∠ a:c:d > ∠ c:b:a ∧ ∠ a:c:d > ∠ b:a:c"
    )
    visible = register_theorem(rules, "proposition_13", p13)
    visible = register_theorem(visible, "proposition_16", p16)
    thm = parse_theorem(
        "∀ (a b c : Point) (AB BC AC : Line), formTriangle a b c AB BC AC → "
        "∠ a:b:c + ∠ b:c:a < ∟ + ∟"
    )
    proof = parse_proof((fixtures_dir / "proofs" / "prop17.txt").read_text())
    report = check_proof(thm, proof, visible, cfg)
    assert report.verified
    assert all(g.verdict == "unsat" for g in report.gaps)


def test_prop3_unrepaired_fails_at_between_if(rules, quick_cfg, fixtures_dir):
    p2 = parse_theorem((fixtures_dir / "theorems" / "prop2.txt").read_text())
    visible = register_theorem(rules, "proposition_2", p2)
    thm = parse_theorem((fixtures_dir / "theorems" / "prop3_prediction.txt").read_text())
    proof = parse_proof((fixtures_dir / "proofs" / "prop3_prediction.txt").read_text())
    report = check_proof(thm, proof, visible, quick_cfg)
    assert not report.verified
    assert any(
        "between_if" in f.reason and "not established" in f.reason
        for f in report.failures
    )


def test_prop3_literal_binder_typo_fails_at_that_step(rules, quick_cfg, fixtures_dir):
    # the literal Appendix form binds two witnesses to a one-existential rule
    p2 = parse_theorem((fixtures_dir / "theorems" / "prop2.txt").read_text())
    visible = register_theorem(rules, "proposition_2", p2)
    thm = parse_theorem((fixtures_dir / "theorems" / "prop3_prediction.txt").read_text())
    proof = parse_proof(
        (fixtures_dir / "proofs" / "prop3_prediction.txt")
        .read_text()
        .replace("intersections_circle_line", "intersection_circle_line")
    )
    report = check_proof(thm, proof, visible, quick_cfg)
    assert not report.verified
    assert any("binders" in f.reason for f in report.failures)


def test_by_contra_with_metric_goal(rules, cfg):
    thm = parse_theorem(
        "∀ (a b : Point), a = b → |(a--b)| = 0"
    )
    proof = parse_proof("euclid_intros\nby_contra\neuclid_finish")
    report = check_proof(thm, proof, rules, cfg)
    assert report.verified


def test_have_and_assumption(rules, cfg):
    thm = parse_theorem(
        "∀ (a b c : Point), between a b c → between c b a ∧ a ≠ c"
    )
    proof = parse_proof(
        """euclid_intros
have : between c b a := by
  euclid_finish
constructor
. assumption
. euclid_finish"""
    )
    report = check_proof(thm, proof, rules, cfg)
    assert report.verified


def test_unclosed_goal_reported(rules, quick_cfg, prop1_statement):
    proof = parse_proof("euclid_intros\neuclid_apply circle_from_points a b as BCD")
    report = check_proof(prop1_statement, proof, rules, quick_cfg)
    assert not report.verified
    assert any("unclosed goal" in f.reason for f in report.failures)


def test_failure_in_one_branch_continues_into_siblings(rules, quick_cfg):
    thm = parse_theorem(
        "∀ (a b : Point) (L : Line), onLine a L ∧ onLine b L → ∃ c : Point, c = c",
        strict=False,
    )
    proof = parse_proof(
        """euclid_intros
by_cases a = b
. euclid_apply unknown_rule a
  euclid_finish
. use a
  euclid_finish"""
    )
    report = check_proof(thm, proof, rules, quick_cfg)
    assert not report.verified
    assert report.branch_outcomes.get("root.1") == "failed"
    assert report.branch_outcomes.get("root.2") == "closed"
