"""Rule library: kinds, lookup, reasoning backgrounds, theorem registration."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Optional

from . import rules_data
from .ast import TheoremStatement, well_formed
from .parser import parse_theorem


class RuleKind(Enum):
    CONSTRUCTION = "construction"
    DIAGRAMMATIC = "diagrammatic"
    METRIC = "metric"
    TRANSFER = "transfer"
    SUPERPOSITION = "superposition"


class Origin(Enum):
    BUILTIN = "builtin"
    REGISTERED = "registered"


class Mode(Enum):
    DIAGRAMMATIC = "diagrammatic"
    EQUIVALENCE = "equivalence"


@dataclass(frozen=True)
class Rule:
    name: str
    statement: TheoremStatement
    kind: RuleKind
    origin: Origin = Origin.BUILTIN
    core: bool = True  # False for the unigeo.* extension rules

    @property
    def is_construction(self) -> bool:
        return self.kind is RuleKind.CONSTRUCTION


class UnknownRuleError(KeyError):
    pass


class DuplicateRuleError(ValueError):
    pass


class RuleSet:
    """Immutable ordered name -> Rule map; registration returns a new set."""

    def __init__(self, rules: Iterator[Rule] | list[Rule]):
        self._rules: dict[str, Rule] = {}
        for r in rules:
            if r.name in self._rules:
                raise DuplicateRuleError(f"duplicate rule name {r.name!r}")
            self._rules[r.name] = r

    def __iter__(self) -> Iterator[Rule]:
        return iter(self._rules.values())

    def __len__(self) -> int:
        return len(self._rules)

    def __contains__(self, name: str) -> bool:
        return name in self._rules

    def get(self, name: str) -> Optional[Rule]:
        return self._rules.get(name)

    def lookup(self, name: str) -> Rule:
        r = self._rules.get(name)
        if r is None:
            raise UnknownRuleError(f"unknown rule {name!r}")
        return r

    def names(self) -> list[str]:
        return list(self._rules)

    def filtered(self, pred) -> "RuleSet":
        return RuleSet(r for r in self if pred(r))

    def with_rule(self, rule: Rule) -> "RuleSet":
        if rule.name in self._rules:
            raise DuplicateRuleError(f"duplicate rule name {rule.name!r}")
        return RuleSet([*self, rule])

    def counts_by_kind(self, core_only: bool = True) -> dict[RuleKind, int]:
        counts = {k: 0 for k in RuleKind}
        for r in self:
            if core_only and not (r.core and r.origin is Origin.BUILTIN):
                continue
            counts[r.kind] += 1
        return counts


def _parse_rule(name: str, text: str, kind: RuleKind, core: bool = True) -> Rule:
    stmt = parse_theorem(text, strict=False)
    diags = well_formed(stmt)
    if diags:
        raise ValueError(f"builtin rule {name} is ill-formed: {diags[0]}")
    stmt = TheoremStatement(
        stmt.universals, stmt.preconditions, stmt.existentials, stmt.postconditions, name
    )
    return Rule(name, stmt, kind, Origin.BUILTIN, core)


@lru_cache(maxsize=1)
def builtin_rules() -> RuleSet:
    """All built-in rules: the 103 core rules plus the unigeo.* extensions."""
    rules: list[Rule] = []
    for name, text in rules_data.CONSTRUCTION:
        rules.append(_parse_rule(name, text, RuleKind.CONSTRUCTION))
    for name, text in rules_data.DIAGRAMMATIC:
        rules.append(_parse_rule(name, text, RuleKind.DIAGRAMMATIC))
    for name, text in rules_data.METRIC:
        rules.append(_parse_rule(name, text, RuleKind.METRIC))
    for name, text in rules_data.TRANSFER:
        rules.append(_parse_rule(name, text, RuleKind.TRANSFER))
    for name, text in rules_data.SUPERPOSITION:
        rules.append(_parse_rule(name, text, RuleKind.SUPERPOSITION))
    for name, text in rules_data.UNIGEO:
        rules.append(_parse_rule(name, text, RuleKind.TRANSFER, core=False))
    return RuleSet(rules)


def background_for(mode: Mode, rules: Optional[RuleSet] = None) -> RuleSet:
    """Rules available to the symbolic engine in the given mode.

    Diagrammatic mode: every non-construction rule except superposition.
    Equivalence mode: the diagrammatic set plus nine simple construction
    rules.  Registered theorems never enter a background.
    """
    rules = rules if rules is not None else builtin_rules()
    out: list[Rule] = []
    for r in rules:
        if r.origin is not Origin.BUILTIN:
            continue
        if r.kind in (RuleKind.DIAGRAMMATIC, RuleKind.METRIC, RuleKind.TRANSFER):
            out.append(r)
        elif (
            mode is Mode.EQUIVALENCE
            and r.kind is RuleKind.CONSTRUCTION
            and r.name in rules_data.EQUIVALENCE_CONSTRUCTION_RULES
        ):
            out.append(r)
    return RuleSet(out)


def register_theorem(rs: RuleSet, name: str, thm: TheoremStatement) -> RuleSet:
    """Make a proved theorem forward-applicable under `name`."""
    diags = well_formed(thm)
    if diags:
        raise ValueError(f"cannot register ill-formed theorem {name}: {diags[0]}")
    kind = RuleKind.CONSTRUCTION if thm.existentials else RuleKind.TRANSFER
    stmt = TheoremStatement(
        thm.universals, thm.preconditions, thm.existentials, thm.postconditions, name
    )
    return rs.with_rule(Rule(name, stmt, kind, Origin.REGISTERED, core=False))
