import pytest

from e3geo.ast import Congruent, MetricCmp, PredAtom, Quotient, Sort
from e3geo.parser import (
    ParseError,
    parse_formula_clauses,
    parse_proof,
    parse_theorem,
    render_proof,
    render_statement,
    tokenize,
)
from e3geo.sugar import syntactic_eq

PROP1 = """theorem proposition_1 : ∀ (a b : Point) (AB : Line),
  distinctPointsOnLine a b AB →
  ∃ c : Point, |(c--a)| = |(a--b)| ∧ |(c--b)| = |(a--b)|"""


def test_proposition_1_shape():
    t = parse_theorem(PROP1)
    assert t.name == "proposition_1"
    assert [(v.name, v.sort) for v in t.universals] == [
        ("a", Sort.POINT),
        ("b", Sort.POINT),
        ("AB", Sort.LINE),
    ]
    assert len(t.preconditions) == 1
    assert [v.name for v in t.existentials] == ["c"]
    assert len(t.postconditions) == 2


def test_minimal_statement():
    t = parse_theorem("∀ (a : Point), a = a → ∃ (b : Point), b = a")
    assert len(t.preconditions) == 1
    assert len(t.postconditions) == 1


def test_ascii_matches_unicode():
    ascii_text = (
        "forall (a b : Point) (AB : Line), distinctPointsOnLine a b AB -> "
        "exists c : Point, |(c--a)| = |(a--b)| /\\ |(c--b)| = |(a--b)|"
    )
    assert syntactic_eq(parse_theorem(PROP1), parse_theorem(ascii_text))


def test_dotted_and_prefix_forms_agree():
    t1 = parse_theorem("∀ (a : Point) (L : Line), a.onLine L → onLine a L")
    t2 = parse_theorem("∀ (a : Point) (L : Line), onLine a L → a.onLine L")
    assert syntactic_eq(t1, t2)


def test_is_center_spelling_canonicalized():
    t = parse_theorem(
        "∀ (a : Point) (α : Circle), isCenter a α → insideCircle a α"
    )
    assert t.preconditions[0].literals[0].atom.name == "isCentre"


def test_intersects_circle_resolution_by_sort():
    t = parse_theorem(
        "∀ (L : Line) (α β : Circle), intersectsCircle L α → intersectsCircle α β",
        strict=False,
    )
    assert t.preconditions[0].literals[0].atom.name == "lineIntersectsCircle"
    assert t.postconditions[0].literals[0].atom.name == "circleIntersectsCircle"


def test_appendix_unsat_prediction_parses():
    # well-formedness is separate from satisfiability
    text = """∀ (a b : Point) (AB : Line), distinctPointsOnLine a b AB →
      ∃ (c d : Point) (AC BD : Line), formQuadrilateral a d c b AB BD AC BD ∧
      |(a--b)| = |(b--c)| ∧ |(c--d)| = |(d--a)| ∧
      ∠ a:b:c = ∟ ∧ ∠ b:c:d = ∟ ∧ ∠ c:d:a = ∟ ∧ ∠ d:a:b = ∟"""
    t = parse_theorem(text)
    assert len(t.postconditions) == 7
    assert [v.name for v in t.existentials] == ["c", "d", "AC", "BD"]


def test_congruent_triangle_atoms():
    t = parse_theorem(
        "∀ (W X Y Z : Point), X ≠ Z → (△ W:Y:Z).congruent (△ Y:W:X)",
        strict=False,
    )
    atom = t.postconditions[0].literals[0].atom
    assert isinstance(atom, Congruent)
    assert tuple(v.name for v in atom.t1) == ("W", "Y", "Z")


def test_quotient_terms_parse():
    t = parse_theorem(
        "∀ (a b d e : Point), a ≠ b → |(a--b)| / |(d--e)| = |(b--a)| / |(e--d)|",
        strict=False,
    )
    cmp_ = t.postconditions[0].literals[0].atom
    assert isinstance(cmp_, MetricCmp)
    assert isinstance(cmp_.lhs, Quotient)


def test_triangle_area_terms():
    t = parse_theorem(
        "∀ (a b c : Point), a ≠ b → Triangle.area △ a:b:c = Triangle.area △ c:a:b",
        strict=False,
    )
    assert isinstance(t.postconditions[0].literals[0].atom, MetricCmp)


def test_parenthesized_comparison_clauses():
    t = parse_theorem(
        "∀ (a b c : Point), a ≠ b → (|(a--b)| + |(b--c)| > |(a--c)|) ∧ (∠ a:b:c = ∟)",
        strict=False,
    )
    assert len(t.postconditions) == 2


def test_single_implication_enforced():
    with pytest.raises(ParseError):
        parse_theorem("∀ (a b : Point), a = b → a ≠ b → a = b")


def test_parse_error_has_position_inside_input():
    text = "∀ (a b : Point), a ≠≠ b → a = b"
    with pytest.raises(ParseError) as exc:
        parse_theorem(text)
    span = exc.value.span
    assert span is not None
    assert 0 <= span.start <= span.end <= len(text.encode() if False else text)


def test_strict_mode_raises_on_diagnostics():
    with pytest.raises(ParseError):
        parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, a ≠ a")


def test_comment_handling_vs_segment_dashes():
    t = parse_theorem(
        "-- a leading comment\n∀ (a b : Point), a ≠ b → |(a--b)| > 0 -- trailing\n"
    )
    assert len(t.postconditions) == 1


def test_render_parse_roundtrip_is_syntactic_eq():
    t = parse_theorem(PROP1)
    assert syntactic_eq(t, parse_theorem(render_statement(t)))


def test_render_emits_unicode_for_ascii_input():
    t = parse_theorem("forall (a b : Point), a != b -> exists c : Point, c != a")
    out = render_statement(t)
    assert "∀" in out and "∃" in out and "≠" in out and "->" not in out


def test_render_idempotent_normal_form():
    t = parse_theorem(PROP1)
    once = render_statement(parse_theorem(render_statement(t)))
    twice = render_statement(parse_theorem(once))
    assert once == twice


# -- proofs -------------------------------------------------------------------


def test_prop1_proof_tactic_count(fixtures_dir):
    script = parse_proof((fixtures_dir / "proofs" / "prop1.txt").read_text())
    assert len(script) == 8
    assert [t.kind for t in script.tactics] == [
        "intros", "apply", "apply", "apply", "apply", "apply", "use", "finish",
    ]


def test_trivial_proof():
    script = parse_proof("euclid_intros\neuclid_finish")
    assert len(script) == 2


def test_prop24_style_nested_branches():
    text = """euclid_intros
by_cases (d.sameSide g EF)
. euclid_assert ∠ d:f:g > ∠ e:g:f
  euclid_finish
. by_cases g.onLine EF
  . euclid_finish
  . euclid_apply (extend_point FG g f) as h
    euclid_finish"""
    script = parse_proof(text)
    kinds = [t.kind for t in script.tactics]
    assert kinds == ["intros", "by_cases", "bullet", "bullet"]

    def leaves(tactics):
        n = 0
        for t in tactics:
            if t.kind == "bullet":
                inner = [x for x in t.sub if x.kind == "bullet"]
                n += leaves(t.sub) if inner else 1
            elif t.sub:
                n += leaves(t.sub)
        return n

    assert leaves(script.tactics) == 3


def test_segment_arguments_and_primes():
    script = parse_proof("euclid_apply (extend_point_longer DG d g' (a--c)) as g''")
    t = script.tactics[0]
    assert t.rule == "extend_point_longer"
    assert str(t.args[-1]) == "(a--c)"
    assert t.binders == ["g''"]


def test_have_block_and_constructor_bullets():
    text = """euclid_intros
have : ∠ a:c:d = ∠ c:a:b + ∠ a:b:c := by
  euclid_apply (proposition_31 c a b AB) as CE
  euclid_finish
constructor
. assumption
. euclid_apply (proposition_13 a c b d AC BC)
  euclid_finish"""
    script = parse_proof(text)
    assert [t.kind for t in script.tactics] == [
        "intros", "have", "constructor", "bullet", "bullet",
    ]
    have = script.tactics[1]
    assert [t.kind for t in have.sub] == ["apply", "finish"]


def test_multi_use_witnesses():
    script = parse_proof("use f, g, FC, GB")
    assert script.tactics[0].binders == ["f", "g", "FC", "GB"]


def test_unknown_tactic_positioned_error():
    with pytest.raises(ParseError) as exc:
        parse_proof("euclid_intros\nринг witness")
    assert exc.value.span is not None
    assert exc.value.span.line == 2


def test_proof_render_roundtrip(fixtures_dir):
    for name in ("prop1.txt", "prop17.txt", "prop3_prediction.txt"):
        text = (fixtures_dir / "proofs" / name).read_text()
        script = parse_proof(text)
        again = parse_proof(render_proof(script))
        assert [t.kind for t in again.tactics] == [t.kind for t in script.tactics]
        assert render_proof(again) == render_proof(script)


def test_leading_by_tolerated():
    script = parse_proof("by\n  euclid_intros\n  euclid_finish")
    assert len(script) == 2


# -- tactic formulas ----------------------------------------------------------


def test_parse_formula_clauses_uses_environment():
    env = {"d": Sort.POINT, "g": Sort.POINT, "EF": Sort.LINE}
    clauses = parse_formula_clauses("d.sameSide g EF", env)
    assert len(clauses) == 1
    atom = clauses[0].literals[0].atom
    assert isinstance(atom, PredAtom) and atom.name == "sameSide"


def test_parse_formula_object_equality_env_typed():
    env = {"L": Sort.LINE, "M": Sort.LINE}
    clauses = parse_formula_clauses("L = M", env)
    assert clauses[0].literals[0].atom.lhs.sort is Sort.LINE


def test_every_fixture_statement_roundtrips(fixtures_dir):
    import json

    for path in [fixtures_dir / "corpus.jsonl", fixtures_dir / "helpers" / "elements_book1.jsonl"]:
        for line in path.read_text().splitlines():
            if not line.strip():
                continue
            doc = json.loads(line)
            t = parse_theorem(doc["theorem"])
            assert syntactic_eq(t, parse_theorem(render_statement(t))), doc["id"]
