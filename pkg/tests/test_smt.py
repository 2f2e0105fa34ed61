import time
from pathlib import Path

import pytest

from e3geo.ast import Clause, Literal, ObjectEq, PredAtom, Sort, Var
from e3geo.parser import parse_theorem
from e3geo.rules import Mode, RuleSet, background_for, builtin_rules
from e3geo.smt import (
    EncodeOptions,
    EncodingError,
    Goal,
    SmtScript,
    SolverConfig,
    encode_implication,
    encode_refutation,
    run_solver,
)
from e3geo.sugar import desugar_theorem

from conftest import requires_solver

P, L, C = Sort.POINT, Sort.LINE, Sort.CIRCLE


def lit(name, *args):
    return Clause.of(Literal(False, PredAtom(name, args)))


a, b, c = Var("a", P), Var("b", P), Var("c", P)
AB = Var("AB", L)


def test_scripts_byte_deterministic():
    bg = background_for(Mode.DIAGRAMMATIC)
    fact = lit("between", a, b, c)
    goal = Goal.of_clauses([lit("between", c, b, a)])
    s1 = encode_refutation(bg, [a, b, c], [fact], goal)
    s2 = encode_refutation(bg, [a, b, c], [fact], goal)
    assert s1.text == s2.text


def test_superposition_in_background_is_encoding_error(rules):
    sup = RuleSet([rules.lookup("superposition")])
    with pytest.raises(EncodingError):
        encode_refutation(sup, [a], [], Goal.of_clauses([lit("onLine", a, AB)]))


def test_empty_goal_encodes_assert_false():
    script = encode_refutation(RuleSet([]), [a], [], Goal.of_clauses([]))
    assert "(assert false)" in script.text


def test_quoted_symbols_for_primes_and_greek():
    bg = RuleSet([])
    v1, v2 = Var("b'", P), Var("α", C)
    script = encode_refutation(
        bg, [v1, v2], [lit("onCircle", v1, v2)], Goal.of_clauses([lit("onCircle", v1, v2)])
    )
    assert "|b'|" in script.text and "|α|" in script.text


@requires_solver
def test_trivial_verdicts(cfg):
    assert run_solver(SmtScript("(assert false)\n(check-sat)\n"), cfg, "t").verdict.kind == "unsat"
    assert run_solver(SmtScript("(assert true)\n(check-sat)\n"), cfg, "t").verdict.kind == "sat"


@requires_solver
def test_assumption_closes_goal(cfg):
    fact = lit("onLine", a, AB)
    script = encode_refutation(RuleSet([]), [a, AB], [fact], Goal.of_clauses([fact]))
    assert run_solver(script, cfg, "t").verdict.is_unsat


@requires_solver
def test_between_symm_refutation(cfg):
    bg = background_for(Mode.DIAGRAMMATIC)
    script = encode_refutation(
        bg, [a, b, c], [lit("between", a, b, c)], Goal.of_clauses([lit("between", c, b, a)])
    )
    assert run_solver(script, cfg, "t").verdict.is_unsat


@requires_solver
def test_goal_strengthening_monotonicity(cfg):
    # facts ⊆ facts' keeps refutation unsat
    bg = background_for(Mode.DIAGRAMMATIC)
    facts = [lit("between", a, b, c)]
    more = facts + [lit("onLine", a, AB), lit("onLine", b, AB)]
    goal = Goal.of_clauses([lit("between", c, b, a)])
    r1 = run_solver(encode_refutation(bg, [a, b, c, AB], facts, goal), cfg, "t1")
    r2 = run_solver(encode_refutation(bg, [a, b, c, AB], more, goal), cfg, "t2")
    assert r1.verdict.is_unsat and r2.verdict.is_unsat


@requires_solver
def test_timeout_on_hard_nonlinear_script():
    # a solver-hard quantified nonlinear problem; only the verdict kind and
    # the wall-clock bound are asserted
    hard = SmtScript(
        "(declare-fun f (Real) Real)\n"
        "(assert (forall ((x Real) (y Real)) "
        "(= (f (* x y)) (+ (* (f x) (f y)) (* x y x y y x)))))\n"
        "(assert (exists ((x Real)) (and (> (f x) 3.0) (< (* (f x) (f x) x) (- 7.0)))))\n"
        "(check-sat)\n"
    )
    cfg = SolverConfig(timeout_secs=1.0)
    started = time.monotonic()
    result = run_solver(hard, cfg, "hard")
    wall = time.monotonic() - started
    assert result.verdict.kind in ("timeout", "unknown")
    assert wall <= 1.0 + 15.0  # grace covers process startup


@requires_solver
def test_dump_and_replay(tmp_path, quick_cfg):
    bg = background_for(Mode.DIAGRAMMATIC)
    cfg = SolverConfig(timeout_secs=quick_cfg.timeout_secs, dump_dir=tmp_path)
    script = encode_refutation(
        bg, [a, b, c], [lit("between", a, b, c)], Goal.of_clauses([lit("between", c, b, a)])
    )
    r = run_solver(script, cfg, "replay_me")
    dumped = tmp_path / "replay_me.smt2"
    assert dumped.exists()
    assert dumped.read_text() == script.text
    again = run_solver(SmtScript(dumped.read_text()), cfg, "replay_me_2")
    assert again.verdict.kind == r.verdict.kind


@requires_solver
def test_identity_implication(cfg):
    t = desugar_theorem(
        parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    )
    bg = background_for(Mode.EQUIVALENCE)
    r = run_solver(encode_implication(t, t, bg, cfg.encode), cfg, "ident")
    assert r.verdict.is_unsat


@requires_solver
def test_precondition_weakening_implication(cfg):
    # T implies T-with-an-extra-precondition-clause: stronger hypotheses help
    t = desugar_theorem(parse_theorem(
        "∀ (a b : Point) (AB : Line), onLine a AB ∧ a ≠ b → ∃ c : Point, c ≠ a"
    ))
    t_extra = desugar_theorem(parse_theorem(
        "∀ (a b : Point) (AB : Line), onLine a AB ∧ a ≠ b ∧ onLine b AB → ∃ c : Point, c ≠ a"
    ))
    bg = background_for(Mode.EQUIVALENCE)
    r = run_solver(encode_implication(t, t_extra, bg, cfg.encode), cfg, "weaken")
    assert r.verdict.is_unsat


def test_solver_error_on_garbage(cfg):
    r = run_solver(SmtScript("(this is not smtlib"), cfg, "garbage")
    assert r.verdict.kind == "error"


def test_unsat_never_inferred_from_exit_codes(tmp_path):
    # a fake solver that exits nonzero without printing a verdict
    fake = tmp_path / "fake-solver"
    fake.write_text("#!/bin/sh\nexit 1\n")
    fake.chmod(0o755)
    cfg = SolverConfig(solver=str(fake), timeout_secs=5)
    r = run_solver(SmtScript("(check-sat)\n"), cfg, "fake")
    assert r.verdict.kind == "error"
