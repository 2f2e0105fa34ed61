"""Parser and printer for the Lean-like geometric surface language.

Statements follow the single-implication shape

    theorem NAME : forall (a b : Point) (AB : Line),
      pre_1 /\ ... /\ pre_m ->
      exists (c : Point), post_1 /\ ... /\ post_n

with Unicode and ASCII operator spellings accepted interchangeably, dotted
(`a.onLine L`) and prefix (`onLine a L`) relation forms, and `--` comments.
Proof scripts are line-oriented tactic sequences with `.`-bullet branches.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .ast import (
    AngleDeg,
    Area,
    Atom,
    BASIC_PREDICATES,
    Clause,
    Congruent,
    Const,
    Falsum,
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
    Sort,
    Span,
    Sum,
    SUGAR_PREDICATES,
    TheoremStatement,
    Var,
)

PREDICATES = {**BASIC_PREDICATES, **SUGAR_PREDICATES}

#: dotted-form receivers: method name -> (predicate, receiver position)
_DOTTED = {
    "onLine": "onLine",
    "sameSide": "sameSide",
    "opposingSides": "opposingSides",
    "onCircle": "onCircle",
    "insideCircle": "insideCircle",
    "outsideCircle": "outsideCircle",
    "isCentre": "isCentre",
    "isCenter": "isCentre",
    "intersectsLine": "intersectsLine",
    "collinear": "collinear",
}

_KEYWORDS = {"theorem", "def", "axiom", "true", "True", "false", "False"}

_SYMBOL_ALIASES = {
    "∀": "FORALL",
    "∃": "EXISTS",
    "∧": "AND",
    "∨": "OR",
    "¬": "NOT",
    "→": "ARROW",
    "≠": "NE",
    "≤": "LE",
    "≥": "GE",
    "∟": "RIGHTANGLE",
    "⊿": "RIGHTANGLE",
    "∠": "ANGLE",
    "△": "TRIANGLE",
    "▵": "TRIANGLE",
    "⬝": "DOT",
}

_WORD_ALIASES = {
    "forall": "FORALL",
    "exists": "EXISTS",
    "angle": "ANGLE",
    "tri": "TRIANGLE",
}


class ParseError(Exception):
    def __init__(self, message: str, span: Optional[Span] = None):
        self.span = span
        if span is not None:
            message = f"{span.line}:{span.col}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span


def _ident_start(ch: str) -> bool:
    return ch == "_" or unicodedata.category(ch).startswith("L")


def _ident_cont(ch: str) -> bool:
    return ch == "_" or ch == "'" or ch.isdigit() or unicodedata.category(ch).startswith("L")


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    line, bol = 1, 0

    def span(s: int, e: int) -> Span:
        return Span(s, e, line, s - bol + 1)

    while i < n:
        ch = text[i]
        if ch == "\n":
            toks.append(Token("NEWLINE", "\n", span(i, i + 1)))
            i += 1
            line += 1
            bol = i
            continue
        if ch.isspace():
            i += 1
            continue
        if text.startswith("--", i):
            at_bol = i == bol or text[i - 1].isspace()
            after = text[i + 2] if i + 2 < n else " "
            if at_bol and (after.isspace() or after == "-"):
                while i < n and text[i] != "\n":
                    i += 1
                continue
            toks.append(Token("SEGDASH", "--", span(i, i + 2)))
            i += 2
            continue
        three = text[i : i + 3]
        if three == "_|_":
            toks.append(Token("RIGHTANGLE", three, span(i, i + 3)))
            i += 3
            continue
        two = text[i : i + 2]
        if two in ("->", "/\\", "\\/", "!=", "<=", ">=", ":="):
            kinds = {
                "->": "ARROW",
                "/\\": "AND",
                "\\/": "OR",
                "!=": "NE",
                "<=": "LE",
                ">=": "GE",
                ":=": "ASSIGN",
            }
            toks.append(Token(kinds[two], two, span(i, i + 2)))
            i += 2
            continue
        if ch in _SYMBOL_ALIASES:
            toks.append(Token(_SYMBOL_ALIASES[ch], ch, span(i, i + 1)))
            i += 1
            continue
        singles = {
            "(": "LPAR",
            ")": "RPAR",
            "|": "BAR",
            ",": "COMMA",
            ":": "COLON",
            ".": "DOT",
            "+": "PLUS",
            "*": "STAR",
            "/": "SLASH",
            "=": "EQ",
            "<": "LT",
            ">": "GT",
            "~": "NOT",
            ";": "SEMI",
        }
        if ch in singles:
            toks.append(Token(singles[ch], ch, span(i, i + 1)))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("NUMBER", text[i:j], span(i, j)))
            i = j
            continue
        if _ident_start(ch):
            j = i
            while j < n and _ident_cont(text[j]):
                j += 1
            word = text[i:j]
            kind = _WORD_ALIASES.get(word, "IDENT")
            toks.append(Token(kind, word, span(i, j)))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", span(i, i + 1))
    toks.append(Token("EOF", "", span(n, n)))
    return toks


# ---------------------------------------------------------------------------
# Formula trees (intermediate shape before clause normalization)


@dataclass(frozen=True)
class _FNode:
    kind: str  # atom | not | and | or | imp | true | false
    span: Span
    atom: Optional[Atom] = None
    kids: tuple["_FNode", ...] = ()


class _Env:
    """Sorts of the identifiers in scope while parsing formulas."""

    def __init__(self, outer: Optional[dict[str, Sort]] = None):
        self.sorts: dict[str, Sort] = dict(outer or {})

    def bind(self, name: str, sort: Sort) -> None:
        self.sorts[name] = sort

    def lookup(self, name: str) -> Optional[Sort]:
        return self.sorts.get(name)


class _Parser:
    def __init__(self, tokens: list[Token], env: Optional[_Env] = None):
        self.toks = [t for t in tokens if t.kind != "NEWLINE"]
        self.pos = 0
        self.env = env or _Env()

    # -- token plumbing -----------------------------------------------------

    def peek(self, off: int = 0) -> Token:
        k = min(self.pos + off, len(self.toks) - 1)
        return self.toks[k]

    def next(self) -> Token:
        t = self.peek()
        if t.kind != "EOF":
            self.pos += 1
        return t

    def expect(self, kind: str, what: str = "") -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {what or kind}, found {t.text!r}", t.span)
        return self.next()

    def at(self, *kinds: str) -> bool:
        return self.peek().kind in kinds

    # -- binders ------------------------------------------------------------

    def parse_sort(self) -> Sort:
        t = self.expect("IDENT", "a sort (Point, Line, or Circle)")
        try:
            return Sort(t.text)
        except ValueError:
            raise ParseError(
                f"unknown sort {t.text!r} (only Point, Line, and Circle objects "
                "may be bound)",
                t.span,
            )

    def parse_binder_group(self) -> list[Var]:
        """One `(a b : Point)` group, or a bare `a b : Point`."""
        parenthesized = self.at("LPAR")
        if parenthesized:
            self.next()
        names: list[Token] = [self.expect("IDENT", "a variable name")]
        while self.at("IDENT"):
            names.append(self.next())
        self.expect("COLON", "':' before the binder sort")
        sort = self.parse_sort()
        if parenthesized:
            self.expect("RPAR", "')' closing the binder group")
        out = []
        for t in names:
            self.env.bind(t.text, sort)
            out.append(Var(t.text, sort, t.span))
        return out

    def parse_binders(self) -> list[Var]:
        """Binder groups up to the comma: `(a b : Point) (AB : Line),`."""
        binders = self.parse_binder_group()
        while self.at("LPAR"):
            binders.extend(self.parse_binder_group())
        self.expect("COMMA", "',' after binders")
        return binders

    # -- formulas -----------------------------------------------------------

    def parse_formula(self) -> _FNode:
        lhs = self.parse_disjunction()
        if self.at("ARROW"):
            arrow = self.next()
            rhs = self.parse_formula()
            if rhs.kind == "imp":
                raise ParseError("only a single implication is allowed", arrow.span)
            return _FNode("imp", arrow.span, kids=(lhs, rhs))
        return lhs

    def parse_disjunction(self) -> _FNode:
        node = self.parse_conjunction()
        while self.at("OR"):
            t = self.next()
            rhs = self.parse_conjunction()
            node = _FNode("or", t.span, kids=(node, rhs))
        return node

    def parse_conjunction(self) -> _FNode:
        node = self.parse_negation()
        while self.at("AND"):
            t = self.next()
            rhs = self.parse_negation()
            node = _FNode("and", t.span, kids=(node, rhs))
        return node

    def parse_negation(self) -> _FNode:
        if self.at("NOT"):
            t = self.next()
            return _FNode("not", t.span, kids=(self.parse_negation(),))
        return self.parse_atomish()

    _METRIC_START = ("BAR", "ANGLE", "NUMBER", "RIGHTANGLE")

    def parse_atomish(self) -> _FNode:
        t = self.peek()
        if t.kind == "IDENT" and t.text in ("true", "True"):
            self.next()
            return _FNode("true", t.span)
        if t.kind == "IDENT" and t.text in ("false", "False"):
            self.next()
            return _FNode("false", t.span)
        if t.kind in self._METRIC_START or t.kind == "TRIANGLE":
            return self.parse_metric_or_triangle_atom()
        if t.kind == "LPAR":
            inner = self.peek(1)
            if inner.kind in self._METRIC_START or inner.kind == "TRIANGLE":
                # `(∠ a:b:c) = …` parenthesizes a term while
                # `(|(a--b)| + … > …)` parenthesizes the whole comparison;
                # try the term reading first and fall back
                save = self.pos
                try:
                    return self.parse_metric_or_triangle_atom()
                except ParseError:
                    self.pos = save
            self.next()
            node = self.parse_formula()
            self.expect("RPAR", "')'")
            if self.at("EQ", "NE", "LT", "LE", "GT", "GE"):
                raise ParseError(
                    "comparison after a parenthesized formula", self.peek().span
                )
            return node
        if t.kind == "IDENT":
            return self.parse_ident_atom()
        raise ParseError(f"cannot start a proposition with {t.text!r}", t.span)

    # -- atoms --------------------------------------------------------------

    def _var(self, tok: Token, sort: Sort) -> Var:
        bound = self.env.lookup(tok.text)
        return Var(tok.text, bound if bound is not None else sort, tok.span)

    def parse_object_ref(self, want: Sort) -> Var:
        if self.at("LPAR"):
            self.next()
            v = self.parse_object_ref(want)
            self.expect("RPAR", "')'")
            return v
        t = self.expect("IDENT", f"a {want.value} name")
        return self._var(t, want)

    def parse_ident_atom(self) -> _FNode:
        t = self.peek()
        nxt = self.peek(1)
        if t.text == "Triangle" and nxt.kind == "DOT":
            return self.parse_metric_or_triangle_atom()
        if (
            t.text in ("Point", "Line", "Circle")
            and nxt.kind == "DOT"
            and self.peek(2).kind == "IDENT"
        ):
            self.next()
            self.next()
            name_tok = self.next()
            return self.parse_prefix_predicate(name_tok)
        if nxt.kind == "DOT" and self.peek(2).kind == "IDENT":
            return self.parse_dotted_atom()
        if nxt.kind in ("EQ", "NE"):
            lhs_tok = self.next()
            op = self.next()
            sort = self.env.lookup(lhs_tok.text) or Sort.POINT
            lhs = self._var(lhs_tok, sort)
            rhs = self.parse_object_ref(lhs.sort)
            atom = ObjectEq(lhs, Var(rhs.name, lhs.sort, rhs.span))
            node = _FNode("atom", lhs_tok.span, atom=atom)
            if op.kind == "NE":
                return _FNode("not", op.span, kids=(node,))
            return node
        name_tok = self.next()
        return self.parse_prefix_predicate(name_tok)

    def parse_prefix_predicate(self, name_tok: Token) -> _FNode:
        name = name_tok.text
        if name == "isCenter":
            name = "isCentre"
        if name in ("congruent", "similar"):
            t1 = self.parse_triangle_corners()
            t2 = self.parse_triangle_corners()
            cls = Congruent if name == "congruent" else Similar
            return _FNode("atom", name_tok.span, atom=cls(t1, t2))
        if name == "intersectsCircle":
            first = self.parse_object_ref(Sort.LINE)
            got = self.env.lookup(first.name)
            if got is Sort.CIRCLE:
                name = "circleIntersectsCircle"
                first = Var(first.name, Sort.CIRCLE, first.span)
            elif got is Sort.LINE:
                name = "lineIntersectsCircle"
            else:
                raise ParseError(
                    f"cannot resolve intersectsCircle: {first.name} has no known sort",
                    name_tok.span,
                )
            rest = [self.parse_object_ref(s) for s in PREDICATES[name][1:]]
            return _FNode("atom", name_tok.span, atom=PredAtom(name, (first, *rest)))
        sig = PREDICATES.get(name)
        if sig is None:
            raise ParseError(f"unknown predicate {name!r}", name_tok.span)
        args = tuple(self.parse_object_ref(s) for s in sig)
        return _FNode("atom", name_tok.span, atom=PredAtom(name, args))

    def parse_dotted_atom(self) -> _FNode:
        recv_tok = self.next()
        self.expect("DOT")
        meth_tok = self.expect("IDENT", "a relation name")
        meth = meth_tok.text
        recv_sort = self.env.lookup(recv_tok.text)
        if meth == "intersectsCircle":
            name = "circleIntersectsCircle" if recv_sort is Sort.CIRCLE else "lineIntersectsCircle"
        elif meth in _DOTTED:
            name = _DOTTED[meth]
        else:
            raise ParseError(f"unknown relation .{meth}", meth_tok.span)
        sig = PREDICATES[name]
        recv = self._var(recv_tok, sig[0])
        rest = [self.parse_object_ref(s) for s in sig[1:]]
        return _FNode("atom", recv_tok.span, atom=PredAtom(name, (recv, *rest)))

    def parse_triangle_corners(self) -> tuple[Var, Var, Var]:
        parens = self.at("LPAR")
        if parens:
            self.next()
        self.expect("TRIANGLE", "a triangle")
        a = self.parse_object_ref(Sort.POINT)
        self.expect("COLON")
        b = self.parse_object_ref(Sort.POINT)
        self.expect("COLON")
        c = self.parse_object_ref(Sort.POINT)
        if parens:
            self.expect("RPAR", "')'")
        return (a, b, c)

    def parse_metric_or_triangle_atom(self) -> _FNode:
        start = self.peek()
        save = self.pos
        if start.kind == "LPAR" and self.peek(1).kind == "TRIANGLE" or start.kind == "TRIANGLE":
            t1 = self.parse_triangle_corners()
            if self.at("DOT"):
                self.next()
                meth = self.expect("IDENT", "congruent or similar")
                if meth.text not in ("congruent", "similar"):
                    raise ParseError(f"unknown triangle relation .{meth.text}", meth.span)
                t2 = self.parse_triangle_corners()
                cls = Congruent if meth.text == "congruent" else Similar
                return _FNode("atom", start.span, atom=cls(t1, t2))
            self.pos = save
        lhs = self.parse_metric_expr()
        op_tok = self.peek()
        ops = {"EQ": "=", "NE": "!=", "LT": "<", "LE": "<=", "GT": ">", "GE": ">="}
        if op_tok.kind not in ops:
            raise ParseError("expected a comparison in metric proposition", op_tok.span)
        self.next()
        rhs = self.parse_metric_expr()
        if op_tok.kind == "NE":
            atom = MetricCmp("=", lhs, rhs)
            return _FNode("not", op_tok.span, kids=(_FNode("atom", start.span, atom=atom),))
        return _FNode("atom", start.span, atom=MetricCmp(ops[op_tok.kind], lhs, rhs))

    # -- metric expressions ---------------------------------------------------

    def parse_metric_expr(self) -> MetricTerm:
        terms = [self.parse_metric_factor()]
        while self.at("PLUS"):
            self.next()
            terms.append(self.parse_metric_factor())
        if len(terms) == 1:
            return terms[0]
        return Sum(tuple(terms))

    def parse_metric_factor(self) -> MetricTerm:
        node = self.parse_metric_primary()
        while self.at("STAR", "SLASH"):
            op = self.next()
            rhs = self.parse_metric_primary()
            if op.kind == "STAR":
                if isinstance(node, Product):
                    node = Product(node.terms + (rhs,))
                else:
                    node = Product((node, rhs))
            else:
                if isinstance(node, Const) and isinstance(rhs, Const):
                    if rhs.value == 0:
                        raise ParseError("division by the constant 0", op.span)
                    node = Const(node.value / rhs.value)
                else:
                    node = Quotient(node, rhs)
        return node

    def parse_metric_primary(self) -> MetricTerm:
        t = self.peek()
        if t.kind == "NUMBER":
            self.next()
            return Const(Fraction(int(t.text)))
        if t.kind == "RIGHTANGLE":
            self.next()
            return RightAngle()
        if t.kind == "BAR":
            self.next()
            parens = self.at("LPAR")
            if parens:
                self.next()
            a = self.parse_object_ref(Sort.POINT)
            self.expect("SEGDASH", "'--' between segment endpoints")
            b = self.parse_object_ref(Sort.POINT)
            if parens:
                self.expect("RPAR", "')'")
            self.expect("BAR", "closing '|'")
            return Length(a, b)
        if t.kind == "ANGLE":
            self.next()
            a = self.parse_object_ref(Sort.POINT)
            self.expect("COLON")
            b = self.parse_object_ref(Sort.POINT)
            self.expect("COLON")
            c = self.parse_object_ref(Sort.POINT)
            return AngleDeg(a, b, c)
        if t.kind == "IDENT" and t.text == "Triangle":
            self.next()
            self.expect("DOT")
            area_tok = self.expect("IDENT")
            if area_tok.text != "area":
                raise ParseError(f"unknown Triangle.{area_tok.text}", area_tok.span)
            a, b, c = self.parse_triangle_corners()
            return Area(a, b, c)
        if t.kind == "LPAR":
            self.next()
            inner = self.parse_metric_expr()
            self.expect("RPAR", "')'")
            return inner
        raise ParseError(f"expected a metric term, found {t.text!r}", t.span)


# ---------------------------------------------------------------------------
# Formula tree -> statement normalization


def _nnf(node: _FNode, neg: bool) -> _FNode:
    if node.kind == "atom":
        return _FNode("not", node.span, kids=(node,)) if neg else node
    if node.kind == "true":
        return _FNode("false" if neg else "true", node.span)
    if node.kind == "false":
        return _FNode("true" if neg else "false", node.span)
    if node.kind == "not":
        return _nnf(node.kids[0], not neg)
    if node.kind in ("and", "or"):
        kind = node.kind
        if neg:
            kind = "or" if kind == "and" else "and"
        return _FNode(kind, node.span, kids=tuple(_nnf(k, neg) for k in node.kids))
    if node.kind == "imp":
        raise ParseError("implication nested inside a proposition", node.span)
    raise ParseError(f"cannot normalize {node.kind}", node.span)


def _flatten(node: _FNode, kind: str) -> list[_FNode]:
    if node.kind == kind:
        out: list[_FNode] = []
        for k in node.kids:
            out.extend(_flatten(k, kind))
        return out
    return [node]


def _to_literal(node: _FNode) -> Literal:
    if node.kind == "atom":
        return Literal(False, node.atom)
    if node.kind == "not" and node.kids[0].kind == "atom":
        return Literal(True, node.kids[0].atom)
    if node.kind == "false":
        return Literal(False, Falsum())
    raise ParseError(
        "proposition too complex for the clause shape (a conjunction of "
        "disjunctions of literals)",
        node.span,
    )


def _to_clauses(node: _FNode) -> list[Clause]:
    node = _nnf(node, False)
    clauses: list[Clause] = []
    for conjunct in _flatten(node, "and"):
        if conjunct.kind == "true":
            continue
        disjuncts = _flatten(conjunct, "or")
        clauses.append(Clause(tuple(_to_literal(d) for d in disjuncts)))
    return clauses


class _StatementParser(_Parser):
    """Adds existential handling, which needs binder scope interleaving."""

    def parse_statement(self, name: Optional[str]) -> TheoremStatement:
        universals: list[Var] = []
        while self.at("FORALL"):
            self.next()
            universals.extend(self.parse_binders())
        first = self.parse_formula_or_exists()
        if first[0] == "imp_parts":
            _, pre_node, exists_vars, post_node = first
        else:
            _, exists_vars, post_node = first
            pre_node = None
        pre = _to_clauses(pre_node) if pre_node is not None else []
        post = _to_clauses(post_node)
        return TheoremStatement(
            universals=tuple(universals),
            preconditions=tuple(pre),
            existentials=tuple(exists_vars),
            postconditions=tuple(post),
            name=name,
        )

    def parse_formula_or_exists(self):
        if self.at("EXISTS"):
            self.next()
            ex = self.parse_binders()
            body = self.parse_formula()
            if body.kind == "imp":
                raise ParseError(
                    "implication under an existential quantifier", body.span
                )
            return ("exists_parts", ex, body)
        lhs = self.parse_disjunction()
        if self.at("ARROW"):
            self.next()
            if self.at("EXISTS"):
                self.next()
                ex = self.parse_binders()
                body = self.parse_formula()
                if body.kind == "imp":
                    raise ParseError("only a single implication is allowed", body.span)
                return ("imp_parts", lhs, ex, body)
            rhs = self.parse_formula()
            if rhs.kind == "imp":
                raise ParseError("only a single implication is allowed", rhs.span)
            return ("imp_parts", lhs, [], rhs)
        return ("exists_parts", [], lhs)


def parse_theorem(text: str, strict: bool = True) -> TheoremStatement:
    """Parse one theorem statement (optionally with a `theorem NAME :` header).

    With strict=True (the default), well-formedness diagnostics are raised as
    ParseError; strict=False returns the statement and leaves diagnosis to
    the caller.
    """
    toks = tokenize(text)
    p = _StatementParser(toks)
    name = None
    t = p.peek()
    if t.kind == "IDENT" and t.text in ("theorem", "def", "axiom"):
        p.next()
        if p.at("IDENT"):
            name = p.next().text
        p.expect("COLON", "':' after the theorem name")
    stmt = p.parse_statement(name)
    tail = p.peek()
    if tail.kind not in ("EOF", "ASSIGN"):
        raise ParseError(f"unexpected {tail.text!r} after the statement", tail.span)
    if strict:
        from .ast import well_formed

        diags = well_formed(stmt)
        if diags:
            raise ParseError("; ".join(str(d) for d in diags), diags[0].span)
    return stmt


def parse_formula_clauses(text: str, env_sorts: dict[str, Sort]) -> list[Clause]:
    """Parse a bare proposition (no binders) against known object sorts.

    Used for tactic conditions (`euclid_assert`, `by_cases`, `have`), which
    are elaborated in the proof context where the objects are already typed.
    """
    toks = tokenize(text)
    env = _Env(env_sorts)
    p = _Parser(toks, env)
    node = p.parse_formula()
    if p.peek().kind != "EOF":
        raise ParseError(f"unexpected {p.peek().text!r}", p.peek().span)
    if node.kind == "imp":
        raise ParseError("tactic propositions may not contain an implication", node.span)
    return _to_clauses(node)


# ---------------------------------------------------------------------------
# Proof scripts


@dataclass(frozen=True)
class SegArg:
    a: str
    b: str

    def __str__(self) -> str:
        return f"({self.a}--{self.b})"


@dataclass
class Tactic:
    """One proof step.

    kind is one of: intros, apply, assert, finish, use, by_cases, by_contra,
    have, constructor, split_ands, assumption, bullet.  A bullet focuses the
    first open goal and must close it with its `sub` block, mirroring the
    `.` blocks that follow by_cases and constructor in the surface syntax.
    """

    kind: str
    span: Span
    rule: Optional[str] = None
    args: list = field(default_factory=list)
    binders: list[str] = field(default_factory=list)
    text: Optional[str] = None  # proposition source for assert/by_cases/have
    name: Optional[str] = None  # optional `have NAME :`
    sub: list["Tactic"] = field(default_factory=list)

    def walk(self):
        yield self
        for t in self.sub:
            yield from t.walk()


@dataclass(frozen=True)
class ProofScript:
    tactics: tuple[Tactic, ...]

    def __len__(self) -> int:
        return len(self.tactics)


_TACTIC_WORDS = {
    "euclid_intros",
    "euclid_apply",
    "euclid_assert",
    "euclid_finish",
    "use",
    "by_cases",
    "by_contra",
    "have",
    "constructor",
    "split_ands",
    "assumption",
}


@dataclass
class _Line:
    indent: int
    text: str
    lineno: int
    offset: int  # byte offset of first content char


def _strip_comment(text: str) -> str:
    """Drop a whitespace-delimited `--` comment; segment dashes are tight."""
    i = 0
    while True:
        i = text.find("--", i)
        if i < 0:
            return text
        before_ok = i == 0 or text[i - 1].isspace()
        after = text[i + 2] if i + 2 < len(text) else " "
        if before_ok and (after.isspace() or after == "-"):
            return text[:i]
        i += 2


def _proof_lines(text: str) -> list[_Line]:
    out = []
    offset = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = _strip_comment(raw).rstrip()
        stripped = content.lstrip()
        indent = len(content) - len(stripped)
        if stripped:
            out.append(_Line(indent, stripped, lineno, offset + indent))
        offset += len(raw) + 1
    return out


def _line_span(line: _Line) -> Span:
    return Span(line.offset, line.offset + len(line.text), line.lineno, line.indent + 1)


class _ProofParser:
    def __init__(self, lines: list[_Line]):
        self.lines = lines
        self.pos = 0

    def peek(self) -> Optional[_Line]:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def parse_tactic(self) -> Tactic:
        line = self.lines[self.pos]
        self.pos += 1
        if line.text.startswith("."):
            return self._parse_bullet(line)
        return self._tactic_of_line(line)

    def _parse_bullet(self, line: _Line) -> Tactic:
        stripped = line.text[1:]
        content = stripped.lstrip()
        pad = len(stripped) - len(content)
        content_col = line.indent + 1 + pad
        sub: list[Tactic] = []
        if content:
            head = _Line(content_col, content, line.lineno, line.offset + 1 + pad)
            self.lines.insert(self.pos, head)
            sub.append(self.parse_tactic())
        sub.extend(self._parse_deeper(line.indent))
        if not sub:
            raise ParseError("empty bullet", _line_span(line))
        return Tactic("bullet", _line_span(line), sub=sub)

    def _parse_deeper(self, col: int) -> list[Tactic]:
        """Tactics on following lines indented strictly past `col`."""
        out: list[Tactic] = []
        while True:
            line = self.peek()
            if line is None or line.indent <= col:
                return out
            out.append(self.parse_tactic())

    def _tactic_of_line(self, line: _Line) -> Tactic:
        span = _line_span(line)
        head = line.text.split(None, 1)
        word = head[0]
        rest = head[1] if len(head) > 1 else ""

        if word == "euclid_intros":
            self._no_rest(rest, span)
            return Tactic("intros", span)
        if word == "euclid_finish":
            self._no_rest(rest, span)
            return Tactic("finish", span)
        if word == "by_contra":
            return Tactic("by_contra", span)
        if word == "constructor":
            self._no_rest(rest, span)
            return Tactic("constructor", span)
        if word == "split_ands":
            self._no_rest(rest, span)
            return Tactic("split_ands", span)
        if word == "assumption":
            self._no_rest(rest, span)
            return Tactic("assumption", span)
        if word == "euclid_apply":
            rule, args, binders = self._parse_apply(rest, span)
            return Tactic("apply", span, rule=rule, args=args, binders=binders)
        if word == "euclid_assert":
            if not rest:
                raise ParseError("euclid_assert needs a proposition", span)
            return Tactic("assert", span, text=rest)
        if word == "use":
            names = [w.strip() for w in rest.split(",") if w.strip()]
            if not names:
                raise ParseError("use needs at least one witness", span)
            return Tactic("use", span, binders=names)
        if word == "by_cases":
            cond = rest.strip()
            if cond.startswith("(") and cond.endswith(")"):
                cond = cond[1:-1].strip()
            if not cond:
                raise ParseError("by_cases needs a condition", span)
            return Tactic("by_cases", span, text=cond)
        if word == "have":
            return self._parse_have(rest, line)
        raise ParseError(f"unknown tactic {word!r}", span)

    def _no_rest(self, rest: str, span: Span) -> None:
        if rest:
            raise ParseError(f"unexpected argument {rest!r}", span)

    def _parse_apply(self, rest: str, span: Span):
        rest = rest.strip()
        binders: list[str] = []
        if " as " in rest:
            rest, binder_part = rest.rsplit(" as ", 1)
            binder_part = binder_part.strip()
            if binder_part.startswith("(") and binder_part.endswith(")"):
                binder_part = binder_part[1:-1]
            binders = [b.strip() for b in binder_part.split(",") if b.strip()]
            if not binders:
                raise ParseError("empty binder list after 'as'", span)
        rest = rest.strip()
        if rest.startswith("(") and rest.endswith(")"):
            rest = rest[1:-1].strip()
        toks = tokenize(rest)
        idx = 0
        if toks[idx].kind != "IDENT":
            raise ParseError("euclid_apply needs a rule name", span)
        rule = toks[idx].text
        idx += 1
        args: list = []
        while toks[idx].kind != "EOF":
            t = toks[idx]
            if t.kind == "IDENT":
                args.append(t.text)
                idx += 1
            elif t.kind == "LPAR":
                if (
                    toks[idx + 1].kind == "IDENT"
                    and toks[idx + 2].kind == "SEGDASH"
                    and toks[idx + 3].kind == "IDENT"
                    and toks[idx + 4].kind == "RPAR"
                ):
                    args.append(SegArg(toks[idx + 1].text, toks[idx + 3].text))
                    idx += 5
                elif toks[idx + 1].kind == "IDENT" and toks[idx + 2].kind == "RPAR":
                    args.append(toks[idx + 1].text)
                    idx += 3
                else:
                    raise ParseError("unsupported rule argument", t.span)
            else:
                raise ParseError(f"unsupported rule argument {t.text!r}", t.span)
        return rule, args, binders

    def _parse_have(self, rest: str, line: _Line) -> Tactic:
        span = _line_span(line)
        if ":=" not in rest:
            raise ParseError("have needs ':= by <proof>'", span)
        head, tail = rest.split(":=", 1)
        head = head.strip()
        name = None
        if ":" not in head:
            raise ParseError("have needs 'have [name] : <proposition>'", span)
        maybe_name, prop = head.split(":", 1)
        maybe_name = maybe_name.strip()
        if maybe_name:
            name = maybe_name
        prop = prop.strip()
        if not prop:
            raise ParseError("have needs a proposition", span)
        tail = tail.strip()
        if not tail.startswith("by"):
            raise ParseError("have proof must start with 'by'", span)
        inline = tail[2:].strip()
        sub: list[Tactic] = []
        if inline:
            sub.append(
                self._tactic_of_line(
                    _Line(line.indent + 2, inline, line.lineno, line.offset)
                )
            )
        else:
            sub = self._parse_deeper(line.indent)
        if not sub:
            raise ParseError("empty 'by' block in have", span)
        return Tactic("have", span, text=prop, name=name, sub=sub)


def parse_proof(text: str) -> ProofScript:
    """Parse a tactic proof; a leading `by` line is tolerated."""
    lines = _proof_lines(text)
    if lines and lines[0].text == "by":
        lines = lines[1:]
    elif lines and lines[0].text.startswith("by "):
        first = lines[0]
        content = first.text[3:].lstrip()
        lines[0] = _Line(first.indent + 3, content, first.lineno, first.offset + 3)
    p = _ProofParser(lines)
    tactics = []
    while p.peek() is not None:
        tactics.append(p.parse_tactic())
    return ProofScript(tuple(tactics))


# ---------------------------------------------------------------------------
# Rendering


def render_term(t: MetricTerm, prec: int = 0) -> str:
    if isinstance(t, Const):
        v = t.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator} / {v.denominator}"
    if isinstance(t, RightAngle):
        return "∟"
    if isinstance(t, Length):
        return f"|({t.a.name}--{t.b.name})|"
    if isinstance(t, AngleDeg):
        return f"∠ {t.a.name}:{t.b.name}:{t.c.name}"
    if isinstance(t, Area):
        return f"Triangle.area △ {t.a.name}:{t.b.name}:{t.c.name}"
    if isinstance(t, Sum):
        s = " + ".join(render_term(x, 1) for x in t.terms)
        return f"({s})" if prec > 1 else s
    if isinstance(t, Product):
        s = " * ".join(render_term(x, 2) for x in t.terms)
        return f"({s})" if prec > 2 else s
    if isinstance(t, Quotient):
        s = f"{render_term(t.num, 2)} / {render_term(t.den, 3)}"
        return f"({s})" if prec > 2 else s
    raise TypeError(t)


def render_atom(atom: Atom) -> str:
    if isinstance(atom, PredAtom):
        name = atom.name
        if name in ("lineIntersectsCircle", "circleIntersectsCircle"):
            name = "intersectsCircle"
        return " ".join([name, *(v.name for v in atom.args)])
    if isinstance(atom, MetricCmp):
        op = {"=": "=", "<": "<", "<=": "≤", ">": ">", ">=": "≥"}[atom.op]
        return f"{render_term(atom.lhs, 1)} {op} {render_term(atom.rhs, 1)}"
    if isinstance(atom, ObjectEq):
        return f"{atom.lhs.name} = {atom.rhs.name}"
    if isinstance(atom, Congruent):
        a, b = atom.t1, atom.t2
        return (
            f"congruent △ {a[0].name}:{a[1].name}:{a[2].name}"
            f" △ {b[0].name}:{b[1].name}:{b[2].name}"
        )
    if isinstance(atom, Similar):
        a, b = atom.t1, atom.t2
        return (
            f"similar △ {a[0].name}:{a[1].name}:{a[2].name}"
            f" △ {b[0].name}:{b[1].name}:{b[2].name}"
        )
    if isinstance(atom, Falsum):
        return "False"
    raise TypeError(atom)


def render_literal(lit: Literal) -> str:
    body = render_atom(lit.atom)
    if not lit.neg:
        return body
    if isinstance(lit.atom, ObjectEq):
        return f"{lit.atom.lhs.name} ≠ {lit.atom.rhs.name}"
    if isinstance(lit.atom, MetricCmp) and lit.atom.op == "=":
        return f"{render_term(lit.atom.lhs, 1)} ≠ {render_term(lit.atom.rhs, 1)}"
    return f"¬({body})"


def render_clause(cl: Clause) -> str:
    if len(cl.literals) == 1:
        lit = cl.literals[0]
        body = render_literal(lit)
        if not lit.neg and isinstance(lit.atom, PredAtom) and len(body.split()) > 1:
            return body
        return body
    return "(" + " ∨ ".join(render_literal(l) for l in cl.literals) + ")"


def _render_binders(vars_: tuple[Var, ...]) -> str:
    groups: list[tuple[Sort, list[str]]] = []
    for v in vars_:
        if groups and groups[-1][0] is v.sort:
            groups[-1][1].append(v.name)
        else:
            groups.append((v.sort, [v.name]))
    return " ".join(f"({' '.join(names)} : {sort.value})" for sort, names in groups)


def render_statement(thm: TheoremStatement, include_header: bool = True) -> str:
    parts: list[str] = []
    if thm.universals:
        parts.append(f"∀ {_render_binders(thm.universals)},")
    if thm.preconditions:
        parts.append(" ∧ ".join(render_clause(c) for c in thm.preconditions))
        parts.append("→")
    if thm.existentials:
        parts.append(f"∃ {_render_binders(thm.existentials)},")
    if thm.postconditions:
        parts.append(" ∧ ".join(render_clause(c) for c in thm.postconditions))
    else:
        parts.append("true")
    body = " ".join(parts)
    if include_header and thm.name:
        return f"theorem {thm.name} : {body}"
    return body


def render_tactic(t: Tactic, indent: int = 0) -> list[str]:
    pad = " " * indent
    if t.kind == "intros":
        return [pad + "euclid_intros"]
    if t.kind == "finish":
        return [pad + "euclid_finish"]
    if t.kind == "by_contra":
        return [pad + "by_contra"]
    if t.kind == "constructor":
        return [pad + "constructor"]
    if t.kind == "split_ands":
        return [pad + "split_ands"]
    if t.kind == "assumption":
        return [pad + "assumption"]
    if t.kind == "apply":
        args = " ".join(str(a) for a in t.args)
        call = f"{t.rule} {args}".strip()
        line = f"{pad}euclid_apply {call}"
        if t.binders:
            binders = ", ".join(t.binders)
            line += f" as ({binders})" if len(t.binders) > 1 else f" as {t.binders[0]}"
        return [line]
    if t.kind == "assert":
        return [pad + f"euclid_assert {t.text}"]
    if t.kind == "use":
        return [pad + "use " + ", ".join(t.binders)]
    if t.kind == "by_cases":
        return [pad + f"by_cases {t.text}"]
    if t.kind == "bullet":
        lines: list[str] = []
        for sub in t.sub:
            lines.extend(render_tactic(sub, indent + 2))
        lines[0] = pad + ". " + lines[0][indent + 2 :]
        return lines
    if t.kind == "have":
        head = f"{pad}have {t.name + ' ' if t.name else ''}: {t.text} := by"
        out = [head]
        for sub in t.sub:
            out.extend(render_tactic(sub, indent + 2))
        return out
    raise TypeError(t.kind)


def render_proof(script: ProofScript) -> str:
    lines: list[str] = []
    for t in script.tactics:
        lines.extend(render_tactic(t))
    return "\n".join(lines) + "\n"
