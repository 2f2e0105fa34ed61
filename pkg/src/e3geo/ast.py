"""Normalized representation of statements in the geometric proof system.

A theorem statement has the shape

    forall <objects>, P1 /\ ... /\ Pm -> exists <objects>, Q1 /\ ... /\ Qn

where every Pi and Qj is a clause (a disjunction of literals) over points,
lines, and circles.  This module defines the value types, well-formedness
diagnostics, substitution, and alpha-equivalence.  Sugar expansion lives in
:mod:`e3geo.sugar`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union


class Sort(Enum):
    POINT = "Point"
    LINE = "Line"
    CIRCLE = "Circle"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Span:
    """Byte offsets plus 1-based line/column of a region of source text."""

    start: int
    end: int
    line: int
    col: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("span start after end")


@dataclass(frozen=True)
class Var:
    name: str
    sort: Sort
    span: Optional[Span] = field(default=None, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.name or any(ch.isspace() for ch in self.name):
            raise ValueError(f"bad variable name {self.name!r}")

    def __str__(self) -> str:
        return self.name

    def with_span(self, span: Optional[Span]) -> "Var":
        return Var(self.name, self.sort, span)


# ---------------------------------------------------------------------------
# Metric terms


@dataclass(frozen=True)
class Length:
    a: Var
    b: Var


@dataclass(frozen=True)
class AngleDeg:
    a: Var
    b: Var
    c: Var


@dataclass(frozen=True)
class Area:
    a: Var
    b: Var
    c: Var


@dataclass(frozen=True)
class RightAngle:
    pass


@dataclass(frozen=True)
class Const:
    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Sum:
    terms: tuple["MetricTerm", ...]

    def __post_init__(self) -> None:
        if len(self.terms) < 2:
            raise ValueError("Sum needs at least two operands")


@dataclass(frozen=True)
class Product:
    terms: tuple["MetricTerm", ...]

    def __post_init__(self) -> None:
        if len(self.terms) < 2:
            raise ValueError("Product needs at least two operands")


@dataclass(frozen=True)
class Quotient:
    num: "MetricTerm"
    den: "MetricTerm"

    def __post_init__(self) -> None:
        if isinstance(self.den, Const) and self.den.value == 0:
            raise ValueError("Quotient by the literal constant 0")


MetricTerm = Union[Length, AngleDeg, Area, RightAngle, Const, Sum, Product, Quotient]


# ---------------------------------------------------------------------------
# Atoms, literals, clauses


@dataclass(frozen=True)
class PredAtom:
    """A basic or sugar predicate applied to object variables."""

    name: str
    args: tuple[Var, ...]


#: comparison operators; ">" and ">=" are normalized away by canonical_literal
CMP_OPS = ("=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class MetricCmp:
    op: str
    lhs: MetricTerm
    rhs: MetricTerm

    def __post_init__(self) -> None:
        if self.op not in CMP_OPS:
            raise ValueError(f"bad comparison operator {self.op!r}")


@dataclass(frozen=True)
class ObjectEq:
    lhs: Var
    rhs: Var

    def __post_init__(self) -> None:
        if self.lhs.sort is not self.rhs.sort:
            raise ValueError(
                f"object equality between different sorts: {self.lhs} : "
                f"{self.lhs.sort} vs {self.rhs} : {self.rhs.sort}"
            )


@dataclass(frozen=True)
class Congruent:
    t1: tuple[Var, Var, Var]
    t2: tuple[Var, Var, Var]


@dataclass(frozen=True)
class Similar:
    t1: tuple[Var, Var, Var]
    t2: tuple[Var, Var, Var]


@dataclass(frozen=True)
class Falsum:
    """The absurd proposition, used by statements that conclude False."""


Atom = Union[PredAtom, MetricCmp, ObjectEq, Congruent, Similar, Falsum]


@dataclass(frozen=True)
class Literal:
    neg: bool
    atom: Atom

    def negate(self) -> "Literal":
        return Literal(not self.neg, self.atom)


@dataclass(frozen=True)
class Clause:
    """A nonempty disjunction of literals."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if not self.literals:
            raise ValueError("empty clause")

    @staticmethod
    def of(*lits: Literal) -> "Clause":
        return Clause(tuple(lits))

    @property
    def is_singleton(self) -> bool:
        return len(self.literals) == 1


@dataclass(frozen=True)
class TheoremStatement:
    universals: tuple[Var, ...]
    preconditions: tuple[Clause, ...]
    existentials: tuple[Var, ...]
    postconditions: tuple[Clause, ...]
    name: Optional[str] = field(default=None, compare=False)


# ---------------------------------------------------------------------------
# Signatures

P, L, C = Sort.POINT, Sort.LINE, Sort.CIRCLE

#: the nine basic predicates
BASIC_PREDICATES: dict[str, tuple[Sort, ...]] = {
    "onLine": (P, L),
    "sameSide": (P, P, L),
    "between": (P, P, P),
    "onCircle": (P, C),
    "insideCircle": (P, C),
    "isCentre": (P, C),
    "intersectsLine": (L, L),
    "lineIntersectsCircle": (L, C),
    "circleIntersectsCircle": (C, C),
}

#: derived predicates expanded by e3geo.sugar
SUGAR_PREDICATES: dict[str, tuple[Sort, ...]] = {
    "distinctPointsOnLine": (P, P, L),
    "opposingSides": (P, P, L),
    "outsideCircle": (P, C),
    "formTriangle": (P, P, P, L, L, L),
    "formRectilinearAngle": (P, P, P, L, L),
    "formParallelogram": (P, P, P, P, L, L, L, L),
    "formQuadrilateral": (P, P, P, P, L, L, L, L),
    "twoLinesIntersectAtPoint": (L, L, P),
    "collinear": (P, P, P),
}

PREDICATE_SIGNATURES = {**BASIC_PREDICATES, **SUGAR_PREDICATES}


# ---------------------------------------------------------------------------
# Traversals


def metric_term_vars(t: MetricTerm) -> Iterator[Var]:
    if isinstance(t, Length):
        yield t.a
        yield t.b
    elif isinstance(t, (AngleDeg, Area)):
        yield t.a
        yield t.b
        yield t.c
    elif isinstance(t, (Sum, Product)):
        for s in t.terms:
            yield from metric_term_vars(s)
    elif isinstance(t, Quotient):
        yield from metric_term_vars(t.num)
        yield from metric_term_vars(t.den)


def atom_vars(atom: Atom) -> Iterator[Var]:
    if isinstance(atom, PredAtom):
        yield from atom.args
    elif isinstance(atom, MetricCmp):
        yield from metric_term_vars(atom.lhs)
        yield from metric_term_vars(atom.rhs)
    elif isinstance(atom, ObjectEq):
        yield atom.lhs
        yield atom.rhs
    elif isinstance(atom, (Congruent, Similar)):
        yield from atom.t1
        yield from atom.t2


def clause_vars(clause: Clause) -> Iterator[Var]:
    for lit in clause.literals:
        yield from atom_vars(lit.atom)


def statement_vars(thm: TheoremStatement) -> Iterator[Var]:
    for cl in thm.preconditions:
        yield from clause_vars(cl)
    for cl in thm.postconditions:
        yield from clause_vars(cl)


# ---------------------------------------------------------------------------
# Substitution


class SubstitutionError(ValueError):
    pass


def check_substitution(mapping: dict[Var, Var]) -> None:
    for pre, img in mapping.items():
        if pre.sort is not img.sort:
            raise SubstitutionError(
                f"substitution is not sort-preserving: {pre} : {pre.sort} "
                f"-> {img} : {img.sort}"
            )


def _subst_var(v: Var, mapping: dict[Var, Var]) -> Var:
    w = mapping.get(Var(v.name, v.sort))
    return v if w is None else w.with_span(v.span)


def subst_metric_term(t: MetricTerm, mapping: dict[Var, Var]) -> MetricTerm:
    if isinstance(t, Length):
        return Length(_subst_var(t.a, mapping), _subst_var(t.b, mapping))
    if isinstance(t, AngleDeg):
        return AngleDeg(*(_subst_var(v, mapping) for v in (t.a, t.b, t.c)))
    if isinstance(t, Area):
        return Area(*(_subst_var(v, mapping) for v in (t.a, t.b, t.c)))
    if isinstance(t, Sum):
        return Sum(tuple(subst_metric_term(s, mapping) for s in t.terms))
    if isinstance(t, Product):
        return Product(tuple(subst_metric_term(s, mapping) for s in t.terms))
    if isinstance(t, Quotient):
        return Quotient(subst_metric_term(t.num, mapping), subst_metric_term(t.den, mapping))
    return t


def subst_atom(atom: Atom, mapping: dict[Var, Var]) -> Atom:
    if isinstance(atom, Falsum):
        return atom
    if isinstance(atom, PredAtom):
        return PredAtom(atom.name, tuple(_subst_var(v, mapping) for v in atom.args))
    if isinstance(atom, MetricCmp):
        return MetricCmp(atom.op, subst_metric_term(atom.lhs, mapping), subst_metric_term(atom.rhs, mapping))
    if isinstance(atom, ObjectEq):
        return ObjectEq(_subst_var(atom.lhs, mapping), _subst_var(atom.rhs, mapping))
    if isinstance(atom, Congruent):
        return Congruent(
            tuple(_subst_var(v, mapping) for v in atom.t1),
            tuple(_subst_var(v, mapping) for v in atom.t2),
        )
    if isinstance(atom, Similar):
        return Similar(
            tuple(_subst_var(v, mapping) for v in atom.t1),
            tuple(_subst_var(v, mapping) for v in atom.t2),
        )
    raise TypeError(atom)


def subst_literal(lit: Literal, mapping: dict[Var, Var]) -> Literal:
    return Literal(lit.neg, subst_atom(lit.atom, mapping))


def subst_clause(clause: Clause, mapping: dict[Var, Var]) -> Clause:
    return Clause(tuple(subst_literal(l, mapping) for l in clause.literals))


def substitute(thm: TheoremStatement, mapping: dict[Var, Var]) -> TheoremStatement:
    """Simultaneous renaming; binder lists follow bound variables.

    Raises SubstitutionError when the renaming would capture: two distinct
    binders may not collapse to one name, and a renamed binder may not collide
    with an untouched one.
    """
    check_substitution(mapping)
    new_us = tuple(_subst_var(v, mapping) for v in thm.universals)
    new_es = tuple(_subst_var(v, mapping) for v in thm.existentials)
    names = [v.name for v in new_us + new_es]
    if len(set(names)) != len(names):
        raise SubstitutionError(f"substitution captures a binder: {sorted(names)}")
    return TheoremStatement(
        universals=new_us,
        preconditions=tuple(subst_clause(c, mapping) for c in thm.preconditions),
        existentials=new_es,
        postconditions=tuple(subst_clause(c, mapping) for c in thm.postconditions),
        name=thm.name,
    )


# ---------------------------------------------------------------------------
# Well-formedness


@dataclass(frozen=True)
class Diagnostic:
    message: str
    span: Optional[Span] = None

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.span.line}:{self.span.col}: {self.message}"


def _check_atom_sorts(atom: Atom, diags: list[Diagnostic]) -> None:
    if isinstance(atom, PredAtom):
        sig = PREDICATE_SIGNATURES.get(atom.name)
        if sig is None:
            diags.append(Diagnostic(f"unknown predicate {atom.name!r}"))
            return
        if len(sig) != len(atom.args):
            diags.append(
                Diagnostic(
                    f"{atom.name} expects {len(sig)} arguments, got {len(atom.args)}"
                )
            )
            return
        for want, got in zip(sig, atom.args):
            if got.sort is not want:
                diags.append(
                    Diagnostic(
                        f"{atom.name}: argument {got.name} has sort {got.sort}, expected {want}",
                        got.span,
                    )
                )
    elif isinstance(atom, (Congruent, Similar)):
        for v in (*atom.t1, *atom.t2):
            if v.sort is not Sort.POINT:
                diags.append(Diagnostic(f"triangle corner {v.name} is not a Point", v.span))
    elif isinstance(atom, MetricCmp):
        for v in atom_vars(atom):
            if v.sort is not Sort.POINT:
                diags.append(Diagnostic(f"metric term over non-point {v.name}", v.span))


def well_formed(thm: TheoremStatement) -> list[Diagnostic]:
    """Diagnostics for binder and sort problems; empty list means OK."""
    diags: list[Diagnostic] = []
    binders = thm.universals + thm.existentials
    seen: dict[str, Var] = {}
    for v in binders:
        if v.name in seen:
            diags.append(Diagnostic(f"duplicate bound variable {v.name}", v.span))
        seen[v.name] = v

    by_name = {v.name: v for v in binders}
    universal_names = {v.name for v in thm.universals}
    used: set[str] = set()

    def walk(clauses: Iterable[Clause], allow_existentials: bool) -> None:
        for cl in clauses:
            for lit in cl.literals:
                _check_atom_sorts(lit.atom, diags)
                for occ in atom_vars(lit.atom):
                    used.add(occ.name)
                    bound = by_name.get(occ.name)
                    if bound is None:
                        diags.append(Diagnostic(f"unbound variable {occ.name}", occ.span))
                    elif bound.sort is not occ.sort:
                        diags.append(
                            Diagnostic(
                                f"variable {occ.name} used at sort {occ.sort}, bound at {bound.sort}",
                                occ.span,
                            )
                        )
                    elif not allow_existentials and occ.name not in universal_names:
                        diags.append(
                            Diagnostic(
                                f"precondition mentions existential variable {occ.name}",
                                occ.span,
                            )
                        )

    walk(thm.preconditions, allow_existentials=False)
    walk(thm.postconditions, allow_existentials=True)

    for v in thm.universals:
        if v.name not in used:
            diags.append(Diagnostic(f"unused bound variable {v.name}", v.span))
    if thm.postconditions:
        # a bare `exists a, true` asserts existence itself, so existential
        # binders are only reportable when there is a conclusion to mention
        # them in
        for v in thm.existentials:
            if v.name not in used:
                diags.append(Diagnostic(f"unused bound variable {v.name}", v.span))
    return diags


# ---------------------------------------------------------------------------
# Alpha-equivalence

def _canon_statement(thm: TheoremStatement) -> TheoremStatement:
    mapping: dict[Var, Var] = {}
    for i, v in enumerate(thm.universals):
        mapping[Var(v.name, v.sort)] = Var(f"u{i}", v.sort)
    for i, v in enumerate(thm.existentials):
        mapping[Var(v.name, v.sort)] = Var(f"e{i}", v.sort)
    return TheoremStatement(
        universals=tuple(mapping[Var(v.name, v.sort)] for v in thm.universals),
        preconditions=tuple(subst_clause(c, mapping) for c in thm.preconditions),
        existentials=tuple(mapping[Var(v.name, v.sort)] for v in thm.existentials),
        postconditions=tuple(subst_clause(c, mapping) for c in thm.postconditions),
    )


def alpha_equal(t1: TheoremStatement, t2: TheoremStatement) -> bool:
    """Equality up to consistent renaming of bound variables.

    Clause and literal order is significant.  Callers that want the
    spec-level `syntactic_eq` should desugar both statements first (see
    e3geo.sugar.syntactic_eq).
    """
    return _canon_statement(t1) == _canon_statement(t2)
