import time

import pytest

from e3geo.parser import parse_theorem
from e3geo.rules import (
    DuplicateRuleError,
    Mode,
    Origin,
    RuleKind,
    UnknownRuleError,
    background_for,
    builtin_rules,
    register_theorem,
)
from e3geo.rules_data import EQUIVALENCE_CONSTRUCTION_RULES


def test_core_counts_by_kind(rules):
    counts = rules.counts_by_kind(core_only=True)
    assert counts == {
        RuleKind.CONSTRUCTION: 32,
        RuleKind.DIAGRAMMATIC: 36,
        RuleKind.METRIC: 11,
        RuleKind.TRANSFER: 23,
        RuleKind.SUPERPOSITION: 1,
    }


def test_builtin_rules_fast():
    started = time.monotonic()
    builtin_rules()
    assert time.monotonic() - started < 1.0


def test_unigeo_extension_rules_present(rules):
    for name in ("unigeo.congruent_if", "unigeo.similar_if", "unigeo.sas",
                 "unigeo.sss", "unigeo.asa", "unigeo.aas", "unigeo.similar_aa"):
        r = rules.lookup(name)
        assert r.kind is RuleKind.TRANSFER and not r.core


def test_lookup_intersection_circles(rules):
    r = rules.lookup("intersection_circles")
    assert r.kind is RuleKind.CONSTRUCTION
    assert len(r.statement.existentials) == 1
    assert len(r.statement.preconditions) == 1


def test_lookup_between_symm(rules):
    r = rules.lookup("between_symm")
    assert r.kind is RuleKind.DIAGRAMMATIC
    assert not r.statement.existentials


def test_unknown_rule_is_an_error(rules):
    with pytest.raises(UnknownRuleError):
        rules.lookup("circle_squaring")


def test_kind_existential_consistency(rules):
    for r in rules:
        if not r.core:
            continue
        if r.kind is RuleKind.CONSTRUCTION:
            assert r.statement.existentials, r.name
        elif r.kind in (RuleKind.DIAGRAMMATIC, RuleKind.METRIC, RuleKind.TRANSFER):
            if r.name == "lines_intersect":
                assert len(r.statement.existentials) == 1
            else:
                assert not r.statement.existentials, r.name


def test_diagrammatic_background_core_size(rules):
    bg = background_for(Mode.DIAGRAMMATIC)
    assert sum(1 for r in bg if r.core) == 70
    assert all(r.kind is not RuleKind.CONSTRUCTION for r in bg)
    assert all(r.kind is not RuleKind.SUPERPOSITION for r in bg)


def test_equivalence_background_adds_exactly_nine(rules):
    bd = {r.name for r in background_for(Mode.DIAGRAMMATIC)}
    be = {r.name for r in background_for(Mode.EQUIVALENCE)}
    assert be >= bd
    assert be - bd == set(EQUIVALENCE_CONSTRUCTION_RULES)
    assert len(EQUIVALENCE_CONSTRUCTION_RULES) == 9
    assert sum(1 for r in background_for(Mode.EQUIVALENCE) if r.core) == 79


def test_register_theorem_becomes_applicable(rules):
    thm = parse_theorem(
        "∀ (a b : Point) (AB : Line), distinctPointsOnLine a b AB → "
        "∃ c : Point, |(c--a)| = |(a--b)| ∧ |(c--b)| = |(a--b)|"
    )
    rs = register_theorem(rules, "proposition_1", thm)
    r = rs.lookup("proposition_1")
    assert r.origin is Origin.REGISTERED
    assert r.kind is RuleKind.CONSTRUCTION  # has an existential


def test_register_duplicate_name_rejected(rules):
    thm = parse_theorem("∀ (a b : Point), a ≠ b → ∃ c : Point, c ≠ a")
    rs = register_theorem(rules, "helper", thm)
    with pytest.raises(DuplicateRuleError):
        register_theorem(rs, "helper", thm)


def test_registered_never_in_backgrounds(rules, fixtures_dir):
    import json

    rs = rules
    for line in (fixtures_dir / "corpus.jsonl").read_text().splitlines():
        doc = json.loads(line)
        rs = register_theorem(rs, "reg_" + doc["id"], parse_theorem(doc["theorem"]))
    for mode in (Mode.DIAGRAMMATIC, Mode.EQUIVALENCE):
        names = {r.name for r in background_for(mode, rs)}
        assert not any(n.startswith("reg_") for n in names)


def test_builtin_statements_are_well_formed(rules):
    from e3geo.ast import well_formed

    for r in rules:
        assert well_formed(r.statement) == [], r.name
