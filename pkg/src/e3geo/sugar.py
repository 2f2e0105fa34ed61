"""Expansion of derived (sugar) predicates into basic literals.

Each sugar is a conjunction or a disjunction of basic literals over its
parameters.  A positive conjunctive sugar expands literal-by-literal; its
negation is a disjunction and therefore cannot be flattened into a clause
list, so it stays intact and is only expanded structurally inside the SMT
encoder.  `collinear` is the one disjunctive sugar: it expands when negated
and stays intact when positive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    Clause,
    Literal,
    ObjectEq,
    PredAtom,
    Sort,
    TheoremStatement,
    Var,
    alpha_equal,
    subst_literal,
)

P, L = Sort.POINT, Sort.LINE


def _v(name: str, sort: Sort) -> Var:
    return Var(name, sort)


def _lit(neg: bool, name: str, *args: Var) -> Literal:
    return Literal(neg, PredAtom(name, args))


def _ne(a: Var, b: Var) -> Literal:
    return Literal(True, ObjectEq(a, b))


@dataclass(frozen=True)
class SugarDef:
    params: tuple[Var, ...]
    body: tuple[Literal, ...]
    disjunctive: bool = False


def _build_table() -> dict[str, SugarDef]:
    a, b, c, d = (_v(n, P) for n in "abcd")
    ll, m = _v("L", L), _v("M", L)
    AB, BC, CA = _v("AB", L), _v("BC", L), _v("CA", L)
    CD, AC, BD, AD = _v("CD", L), _v("AC", L), _v("BD", L), _v("AD", L)
    al = _v("alpha", Sort.CIRCLE)

    table: dict[str, SugarDef] = {}

    table["distinctPointsOnLine"] = SugarDef(
        (a, b, ll),
        (_lit(False, "onLine", a, ll), _lit(False, "onLine", b, ll), _ne(a, b)),
    )
    table["opposingSides"] = SugarDef(
        (a, b, ll),
        (
            _lit(True, "onLine", a, ll),
            _lit(True, "onLine", b, ll),
            _lit(True, "sameSide", a, b, ll),
        ),
    )
    table["outsideCircle"] = SugarDef(
        (a, al),
        (_lit(True, "insideCircle", a, al), _lit(True, "onCircle", a, al)),
    )
    table["formTriangle"] = SugarDef(
        (a, b, c, AB, BC, CA),
        (
            _lit(False, "onLine", a, AB),
            _lit(False, "onLine", b, AB),
            _ne(a, b),
            _lit(False, "onLine", b, BC),
            _lit(False, "onLine", c, BC),
            _lit(False, "onLine", c, CA),
            _lit(False, "onLine", a, CA),
            _ne(AB, BC),
            _ne(BC, CA),
            _ne(CA, AB),
        ),
    )
    table["formRectilinearAngle"] = SugarDef(
        (a, b, c, AB, BC),
        (
            _lit(False, "onLine", a, AB),
            _lit(False, "onLine", b, AB),
            _ne(a, b),
            _lit(False, "onLine", b, BC),
            _lit(False, "onLine", c, BC),
            _ne(b, c),
        ),
    )
    table["formParallelogram"] = SugarDef(
        (a, b, c, d, AB, CD, AC, BD),
        (
            _lit(False, "onLine", a, AB),
            _lit(False, "onLine", b, AB),
            _lit(False, "onLine", c, CD),
            _lit(False, "onLine", d, CD),
            _lit(False, "onLine", a, AC),
            _lit(False, "onLine", c, AC),
            _lit(False, "onLine", b, BD),
            _lit(False, "onLine", d, BD),
            _ne(b, d),
            _lit(False, "sameSide", a, c, BD),
            _lit(True, "intersectsLine", AB, CD),
            _lit(True, "intersectsLine", AC, BD),
        ),
    )
    # All four points, all four lines distinct; opposite corners straddle
    # nothing, each side leaves the other two corners on one side (convexity).
    quad_incidence = (
        _lit(False, "onLine", a, AB),
        _lit(False, "onLine", b, AB),
        _lit(False, "onLine", c, CD),
        _lit(False, "onLine", d, CD),
        _lit(False, "onLine", b, BC),
        _lit(False, "onLine", c, BC),
        _lit(False, "onLine", a, AD),
        _lit(False, "onLine", d, AD),
    )
    quad_point_ne = tuple(
        _ne(x, y) for i, x in enumerate((a, b, c, d)) for y in (a, b, c, d)[i + 1 :]
    )
    quad_line_ne = tuple(
        _ne(x, y) for i, x in enumerate((AB, CD, BC, AD)) for y in (AB, CD, BC, AD)[i + 1 :]
    )
    quad_convex = (
        _lit(False, "sameSide", c, d, AB),
        _lit(False, "sameSide", a, b, CD),
        _lit(False, "sameSide", a, d, BC),
        _lit(False, "sameSide", b, c, AD),
    )
    table["formQuadrilateral"] = SugarDef(
        (a, b, c, d, AB, CD, BC, AD),
        quad_incidence + quad_point_ne + quad_line_ne + quad_convex,
    )
    table["twoLinesIntersectAtPoint"] = SugarDef(
        (AB, BC, b),
        (_lit(False, "onLine", b, AB), _lit(False, "onLine", b, BC), _ne(AB, BC)),
    )
    table["collinear"] = SugarDef(
        (a, b, c),
        (
            _lit(False, "between", a, b, c),
            _lit(False, "between", b, a, c),
            _lit(False, "between", a, c, b),
            Literal(False, ObjectEq(a, b)),
            Literal(False, ObjectEq(b, c)),
            Literal(False, ObjectEq(a, c)),
        ),
        disjunctive=True,
    )
    return table


SUGAR_TABLE = _build_table()


class SortError(ValueError):
    pass


def is_sugar(lit: Literal) -> bool:
    return isinstance(lit.atom, PredAtom) and lit.atom.name in SUGAR_TABLE


def sugar_body(lit: Literal) -> tuple[tuple[Literal, ...], bool]:
    """Instantiated body of a sugar literal and whether it is disjunctive."""
    assert isinstance(lit.atom, PredAtom)
    defn = SUGAR_TABLE[lit.atom.name]
    if len(defn.params) != len(lit.atom.args):
        raise SortError(
            f"{lit.atom.name} expects {len(defn.params)} arguments, got {len(lit.atom.args)}"
        )
    mapping = dict(zip(defn.params, lit.atom.args))
    return tuple(subst_literal(b, mapping) for b in defn.body), defn.disjunctive


def expandable_as_conjunction(lit: Literal) -> bool:
    """True when the literal flattens to a conjunction of basic literals."""
    if not is_sugar(lit):
        return False
    disjunctive = SUGAR_TABLE[lit.atom.name].disjunctive
    return lit.neg == disjunctive


def desugar_literal(lit: Literal) -> list[Literal]:
    """Expand one literal into an equivalent conjunction of basic literals.

    Basic literals come back as a singleton.  A sugar whose expansion under
    the literal's polarity would be a disjunction (a negated conjunctive
    sugar, or a positive `collinear`) is returned unchanged: it can only be
    expanded where arbitrary Boolean structure is legal.
    """
    if isinstance(lit.atom, PredAtom):
        name = lit.atom.name
        if name in SUGAR_TABLE:
            if not expandable_as_conjunction(lit):
                return [lit]
            body, _ = sugar_body(lit)
            out: list[Literal] = []
            for b in body:
                if lit.neg:
                    b = b.negate()
                out.extend(desugar_literal(b))
            return out
        from .ast import BASIC_PREDICATES

        if name not in BASIC_PREDICATES:
            raise SortError(f"unknown predicate {name!r}")
    return [lit]


def desugar_clause_list(clauses: tuple[Clause, ...]) -> tuple[Clause, ...]:
    out: list[Clause] = []
    for cl in clauses:
        if cl.is_singleton and expandable_as_conjunction(cl.literals[0]):
            out.extend(Clause.of(l) for l in desugar_literal(cl.literals[0]))
        else:
            out.append(cl)
    return tuple(out)


def desugar_theorem(thm: TheoremStatement) -> TheoremStatement:
    """Expand positive sugars in singleton clauses into singleton clauses.

    Sugars inside proper disjunctions or under negation stay intact; the SMT
    encoder expands those structurally.  Binder lists are untouched and the
    expansion order follows the sugar definition order, so the result is
    stable.
    """
    return TheoremStatement(
        universals=thm.universals,
        preconditions=desugar_clause_list(thm.preconditions),
        existentials=thm.existentials,
        postconditions=desugar_clause_list(thm.postconditions),
        name=thm.name,
    )


def syntactic_eq(t1: TheoremStatement, t2: TheoremStatement) -> bool:
    """Alpha-equivalence after sugar expansion; clause order significant."""
    return alpha_equal(desugar_theorem(t1), desugar_theorem(t2))
