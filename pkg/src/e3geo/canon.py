"""Theory-sound canonical forms for literals.

The proof engine accepts a rule precondition without a solver query when
every conjunct is syntactically present in the fact set.  "Syntactically"
is modulo the canonicalizations below, each of which is justified by an
unconditional rule (or by the equality theory itself), so anything accepted
on the fast path is also provable on the refutation path:

- object equality / inequality: symmetric (equality theory)
- between a b c  <->  between c b a        (between_symm)
- sameSide a b L <->  sameSide b a L       (same_side_symm)
- intersectsLine L M <-> intersectsLine M L  (intersection_symm)
- |(a--b)| = |(b--a)|                      (segment_symmetric)
- triangle areas invariant under corner permutation (area_symm_1/2)
- comparison orientation: x > y normalized to y < x, etc.

Angle argument order is NOT canonicalized: angle_symm requires distinctness
premises, so swapping would not be re-provable unconditionally.
"""

from __future__ import annotations

from .ast import (
    AngleDeg,
    Area,
    Atom,
    Clause,
    Congruent,
    Const,
    Length,
    Literal,
    MetricCmp,
    MetricTerm,
    ObjectEq,
    PredAtom,
    Product,
    Quotient,
    RightAngle,
    Similar,
    Sum,
    Var,
)


def term_key(t: MetricTerm) -> tuple:
    if isinstance(t, Const):
        return (0, t.value)
    if isinstance(t, RightAngle):
        return (1,)
    if isinstance(t, Length):
        return (2, t.a.name, t.b.name)
    if isinstance(t, AngleDeg):
        return (3, t.a.name, t.b.name, t.c.name)
    if isinstance(t, Area):
        return (4, t.a.name, t.b.name, t.c.name)
    if isinstance(t, Sum):
        return (5,) + tuple(term_key(s) for s in t.terms)
    if isinstance(t, Product):
        return (6,) + tuple(term_key(s) for s in t.terms)
    if isinstance(t, Quotient):
        return (7, term_key(t.num), term_key(t.den))
    raise TypeError(t)


def canon_term(t: MetricTerm) -> MetricTerm:
    if isinstance(t, Length):
        a, b = sorted((t.a, t.b), key=lambda v: v.name)
        return Length(a, b)
    if isinstance(t, Area):
        a, b, c = sorted((t.a, t.b, t.c), key=lambda v: v.name)
        return Area(a, b, c)
    if isinstance(t, AngleDeg):
        return t
    if isinstance(t, Sum):
        return Sum(tuple(sorted((canon_term(s) for s in t.terms), key=term_key)))
    if isinstance(t, Product):
        return Product(tuple(sorted((canon_term(s) for s in t.terms), key=term_key)))
    if isinstance(t, Quotient):
        return Quotient(canon_term(t.num), canon_term(t.den))
    return t


def canon_atom(atom: Atom) -> Atom:
    if isinstance(atom, ObjectEq):
        a, b = sorted((atom.lhs, atom.rhs), key=lambda v: v.name)
        return ObjectEq(a, b)
    if isinstance(atom, PredAtom):
        args = atom.args
        if atom.name == "between" and args[0].name > args[2].name:
            args = (args[2], args[1], args[0])
        elif atom.name in ("sameSide", "opposingSides") and args[0].name > args[1].name:
            args = (args[1], args[0], args[2])
        elif atom.name == "intersectsLine" and args[0].name > args[1].name:
            args = (args[1], args[0])
        elif atom.name == "distinctPointsOnLine" and args[0].name > args[1].name:
            args = (args[1], args[0], args[2])
        return PredAtom(atom.name, tuple(Var(v.name, v.sort) for v in args))
    if isinstance(atom, MetricCmp):
        op, lhs, rhs = atom.op, canon_term(atom.lhs), canon_term(atom.rhs)
        if op == ">":
            op, lhs, rhs = "<", rhs, lhs
        elif op == ">=":
            op, lhs, rhs = "<=", rhs, lhs
        if op == "=" and term_key(rhs) < term_key(lhs):
            lhs, rhs = rhs, lhs
        return MetricCmp(op, lhs, rhs)
    if isinstance(atom, (Congruent, Similar)):
        t1 = tuple(Var(v.name, v.sort) for v in atom.t1)
        t2 = tuple(Var(v.name, v.sort) for v in atom.t2)
        return type(atom)(t1, t2)
    return atom


def canon_literal(lit: Literal) -> Literal:
    return Literal(lit.neg, canon_atom(lit.atom))


def canon_clause(cl: Clause) -> Clause:
    return Clause(tuple(canon_literal(l) for l in cl.literals))
