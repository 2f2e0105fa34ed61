from fractions import Fraction

import pytest

from e3geo.ast import (
    Clause,
    Const,
    Length,
    Literal,
    MetricCmp,
    ObjectEq,
    PredAtom,
    Quotient,
    Sort,
    Sum,
    SubstitutionError,
    TheoremStatement,
    Var,
    alpha_equal,
    substitute,
    well_formed,
)
from e3geo.parser import parse_theorem

P, L = Sort.POINT, Sort.LINE


def v(name, sort=P):
    return Var(name, sort)


def lit(name, *args):
    return Literal(False, PredAtom(name, args))


def test_variable_names_validated():
    with pytest.raises(ValueError):
        Var("a b", P)
    with pytest.raises(ValueError):
        Var("", P)


def test_clause_nonempty():
    with pytest.raises(ValueError):
        Clause(())


def test_quotient_by_zero_constant_rejected():
    with pytest.raises(ValueError):
        Quotient(Const(Fraction(1)), Const(Fraction(0)))


def test_sum_needs_two_operands():
    with pytest.raises(ValueError):
        Sum((Const(Fraction(1)),))


def test_object_eq_sorts_must_match():
    with pytest.raises(ValueError):
        ObjectEq(v("a"), v("L", L))


# -- substitution -----------------------------------------------------------


def test_substitute_renames_binders_and_occurrences():
    thm = parse_theorem("∀ (a : Point) (L : Line), onLine a L → ∃ b : Point, a ≠ b")
    out = substitute(thm, {v("a"): v("x")})
    assert [u.name for u in out.universals] == ["x", "L"]
    assert out.preconditions[0].literals[0].atom.args[0].name == "x"


def test_substitute_identity_is_syntactically_identical():
    thm = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    assert substitute(thm, {}) == thm


def test_substitute_capture_rejected():
    thm = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    with pytest.raises(SubstitutionError):
        substitute(thm, {v("a"): v("b")})


def test_substitute_inverse_roundtrip():
    thm = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    fwd = {v("a"): v("x"), v("b"): v("y")}
    back = {v("x"): v("a"), v("y"): v("b")}
    assert substitute(substitute(thm, fwd), back) == thm


def test_substitute_sort_mismatch_rejected():
    thm = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    with pytest.raises(SubstitutionError):
        substitute(thm, {v("a"): Var("M", L)})


# -- well-formedness --------------------------------------------------------


def test_well_formed_clean_statement():
    thm = parse_theorem(
        "∀ (a b : Point) (AB : Line), distinctPointsOnLine a b AB → "
        "∃ c : Point, |(c--a)| = |(a--b)| ∧ |(c--b)| = |(a--b)|"
    )
    assert well_formed(thm) == []


def test_well_formed_unused_bound_variable():
    thm = parse_theorem(
        "∀ (a b : Point), a ≠ b → ∃ c : Point, a ≠ a", strict=False
    )
    messages = [d.message for d in well_formed(thm)]
    assert "unused bound variable c" in messages
    assert all("unused" not in m or "c" in m for m in messages)


def test_well_formed_unbound_variable():
    thm = parse_theorem("∀ (a b : Point), a ≠ b → between a b d", strict=False)
    messages = [d.message for d in well_formed(thm)]
    assert "unbound variable d" in messages


def test_well_formed_precondition_mentioning_existential():
    stmt = TheoremStatement(
        universals=(v("a"),),
        preconditions=(Clause.of(Literal(True, ObjectEq(v("a"), v("c")))),),
        existentials=(v("c"),),
        postconditions=(Clause.of(Literal(False, ObjectEq(v("c"), v("a")))),),
    )
    messages = [d.message for d in well_formed(stmt)]
    assert any("existential" in m for m in messages)


def test_well_formed_sort_error():
    stmt = TheoremStatement(
        universals=(v("a"), Var("M", L)),
        preconditions=(Clause.of(lit("onLine", Var("M", L), Var("M", L))),),
        existentials=(),
        postconditions=(Clause.of(Literal(False, ObjectEq(v("a"), v("a")))),),
    )
    assert any("sort" in d.message for d in well_formed(stmt))


def test_well_formed_bare_existence_statement():
    thm = parse_theorem("∃ a : Point, true", strict=False)
    assert well_formed(thm) == []


# -- alpha equivalence ------------------------------------------------------


def test_alpha_reflexive_and_renaming():
    t1 = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    t2 = parse_theorem("∀ (x y : Point), x ≠ y → ∃ z : Point, z ≠ x")
    assert alpha_equal(t1, t1)
    assert alpha_equal(t1, t2)
    assert alpha_equal(t2, t1)


def test_alpha_clause_order_significant():
    t1 = parse_theorem("∀ (a b : Point) (L : Line), onLine a L ∧ a ≠ b → onLine b L")
    t2 = parse_theorem("∀ (a b : Point) (L : Line), a ≠ b ∧ onLine a L → onLine b L")
    assert not alpha_equal(t1, t2)


def test_alpha_transitive_on_sample():
    t1 = parse_theorem("∀ (a : Point) (L : Line), onLine a L → ∃ b : Point, b ≠ a")
    t2 = parse_theorem("∀ (p : Point) (M : Line), onLine p M → ∃ q : Point, q ≠ p")
    t3 = parse_theorem("∀ (u : Point) (N : Line), onLine u N → ∃ w : Point, w ≠ u")
    assert alpha_equal(t1, t2) and alpha_equal(t2, t3) and alpha_equal(t1, t3)
