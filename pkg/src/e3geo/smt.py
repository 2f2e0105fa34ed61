"""SMT-LIB v2 emission and the external-solver subprocess runner.

Scripts are byte-deterministic for identical inputs: declarations come from a
fixed table, background rules are asserted in rule-set order, and everything
else follows the caller's argument order.  One solver process is spawned per
query and fed the script on stdin; the timeout is enforced by killing the
process.
"""

from __future__ import annotations

import os
import re
import shutil
import subprocess
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .ast import (
    AngleDeg,
    Area,
    Atom,
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
    Sum,
    TheoremStatement,
    Var,
)
from .rules import Rule, RuleSet
from .sugar import SUGAR_TABLE, sugar_body

# ---------------------------------------------------------------------------
# Symbols and terms

_SIMPLE_SYMBOL = re.compile(r"[a-zA-Z~!@$%^&*_+=<>.?/-][a-zA-Z0-9~!@$%^&*_+=<>.?/-]*\Z")
_RESERVED = {
    "assert", "check-sat", "declare-fun", "declare-sort", "declare-const",
    "define-fun", "exists", "forall", "let", "and", "or", "not", "true",
    "false", "ite", "xor", "distinct", "as", "par",
}


def sym(name: str) -> str:
    if _SIMPLE_SYMBOL.match(name) and name not in _RESERVED and name.isascii():
        return name
    return "|" + name + "|"


def fmt_rational(v: Fraction) -> str:
    num, den = v.numerator, v.denominator
    body = f"{abs(num)}.0" if den == 1 else f"(/ {abs(num)}.0 {den}.0)"
    return f"(- {body})" if num < 0 else body


def encode_term(t: MetricTerm) -> str:
    if isinstance(t, Length):
        return f"(segLen {sym(t.a.name)} {sym(t.b.name)})"
    if isinstance(t, AngleDeg):
        return f"(angleDeg {sym(t.a.name)} {sym(t.b.name)} {sym(t.c.name)})"
    if isinstance(t, Area):
        return f"(triArea {sym(t.a.name)} {sym(t.b.name)} {sym(t.c.name)})"
    if isinstance(t, RightAngle):
        return "rightAngle"
    if isinstance(t, Const):
        return fmt_rational(t.value)
    if isinstance(t, Sum):
        return "(+ " + " ".join(encode_term(s) for s in t.terms) + ")"
    if isinstance(t, Product):
        return "(* " + " ".join(encode_term(s) for s in t.terms) + ")"
    if isinstance(t, Quotient):
        return f"(/ {encode_term(t.num)} {encode_term(t.den)})"
    raise TypeError(t)


class EncodingError(ValueError):
    pass


def encode_atom(atom: Atom) -> str:
    if isinstance(atom, PredAtom):
        if atom.name in SUGAR_TABLE:
            body, disjunctive = sugar_body(Literal(False, atom))
            op = "or" if disjunctive else "and"
            parts = " ".join(encode_literal(b) for b in body)
            return f"({op} {parts})"
        args = " ".join(sym(v.name) for v in atom.args)
        return f"({atom.name} {args})"
    if isinstance(atom, MetricCmp):
        op = {"=": "=", "<": "<", "<=": "<=", ">": ">", ">=": ">="}[atom.op]
        return f"({op} {encode_term(atom.lhs)} {encode_term(atom.rhs)})"
    if isinstance(atom, ObjectEq):
        return f"(= {sym(atom.lhs.name)} {sym(atom.rhs.name)})"
    if isinstance(atom, Congruent):
        pts = " ".join(sym(v.name) for v in (*atom.t1, *atom.t2))
        return f"(congruent {pts})"
    if isinstance(atom, Similar):
        pts = " ".join(sym(v.name) for v in (*atom.t1, *atom.t2))
        return f"(similar {pts})"
    if isinstance(atom, Falsum):
        return "false"
    raise TypeError(atom)


def encode_literal(lit: Literal) -> str:
    body = encode_atom(lit.atom)
    return f"(not {body})" if lit.neg else body


def encode_clause(cl: Clause) -> str:
    if len(cl.literals) == 1:
        return encode_literal(cl.literals[0])
    return "(or " + " ".join(encode_literal(l) for l in cl.literals) + ")"


def _conj(parts: Sequence[str]) -> str:
    if not parts:
        return "true"
    if len(parts) == 1:
        return parts[0]
    return "(and " + " ".join(parts) + ")"


def _binders(vars_: Sequence[Var]) -> str:
    return " ".join(f"({sym(v.name)} {v.sort.value})" for v in vars_)


def _rule_patterns(rule: Rule) -> list[str]:
    """Shallow trigger candidates: positive precondition atoms covering the
    universals, picked greedily; empty when no cover exists."""
    from .sugar import desugar_theorem

    stmt = desugar_theorem(rule.statement)
    names_needed = {v.name for v in stmt.universals}
    pats: list[str] = []
    covered: set[str] = set()
    for cl in stmt.preconditions:
        if len(cl.literals) != 1:
            continue
        lit = cl.literals[0]
        if lit.neg or not isinstance(lit.atom, PredAtom):
            continue
        if lit.atom.name in SUGAR_TABLE:
            continue
        new = {v.name for v in lit.atom.args} - covered
        if new:
            pats.append(encode_atom(lit.atom))
            covered |= new
        if covered >= names_needed:
            return pats
    return []


def encode_statement_axiom(stmt: TheoremStatement, triggers_for: Optional[Rule] = None) -> str:
    """One closed assertion: forall universals, pre -> exists ex, post."""
    posts = _conj([encode_clause(c) for c in stmt.postconditions])
    if stmt.existentials:
        posts = f"(exists ({_binders(stmt.existentials)}) {posts})"
    body = posts
    if stmt.preconditions:
        pres = _conj([encode_clause(c) for c in stmt.preconditions])
        body = f"(=> {pres} {posts})"
    if stmt.universals:
        if triggers_for is not None:
            pats = _rule_patterns(triggers_for)
            if pats:
                pat = " ".join(pats)
                body = f"(! {body} :pattern ({pat}))"
        body = f"(forall ({_binders(stmt.universals)}) {body})"
    return f"(assert {body})"


def encode_statement_skolemized(stmt: TheoremStatement, prefix: str) -> list[str]:
    """Assert a statement with its existentials replaced by fresh functions
    of the universals (constants when there are none)."""
    lines: list[str] = []
    mapping: dict[Var, Var] = {}
    sk_apps: dict[str, str] = {}
    us = stmt.universals
    for i, ex in enumerate(stmt.existentials):
        fname = f"{prefix}_sk{i}_{ex.name}" if ex.name.isascii() and ex.name.isalnum() else f"{prefix}_sk{i}"
        fname = fname.replace("'", "_p")
        if us:
            doms = " ".join(v.sort.value for v in us)
            lines.append(f"(declare-fun {fname} ({doms}) {ex.sort.value})")
            sk_apps[ex.name] = f"({fname} " + " ".join(sym(v.name) for v in us) + ")"
        else:
            lines.append(f"(declare-const {fname} {ex.sort.value})")
            sk_apps[ex.name] = fname

    def subst_sk(expr: str) -> str:
        # existential names were chosen fresh per statement; a plain token
        # replacement on the rendered s-expression is unambiguous because
        # symbols are whitespace/paren delimited
        for name, app in sk_apps.items():
            expr = re.sub(rf"(?<=[\s(]){re.escape(sym(name))}(?=[\s)])", app, expr)
        return expr

    posts = _conj([subst_sk(encode_clause(c)) for c in stmt.postconditions])
    body = posts
    if stmt.preconditions:
        pres = _conj([encode_clause(c) for c in stmt.preconditions])
        body = f"(=> {pres} {posts})"
    if us:
        body = f"(forall ({_binders(us)}) {body})"
    lines.append(f"(assert {body})")
    return lines


# ---------------------------------------------------------------------------
# Scripts


_DECLS = """(set-logic ALL)
(declare-sort Point 0)
(declare-sort Line 0)
(declare-sort Circle 0)
(declare-fun onLine (Point Line) Bool)
(declare-fun sameSide (Point Point Line) Bool)
(declare-fun between (Point Point Point) Bool)
(declare-fun onCircle (Point Circle) Bool)
(declare-fun insideCircle (Point Circle) Bool)
(declare-fun isCentre (Point Circle) Bool)
(declare-fun intersectsLine (Line Line) Bool)
(declare-fun lineIntersectsCircle (Line Circle) Bool)
(declare-fun circleIntersectsCircle (Circle Circle) Bool)
(declare-fun segLen (Point Point) Real)
(declare-fun angleDeg (Point Point Point) Real)
(declare-fun triArea (Point Point Point) Real)
(declare-const rightAngle Real)
(assert (> rightAngle 0.0))
(declare-fun congruent (Point Point Point Point Point Point) Bool)
(declare-fun similar (Point Point Point Point Point Point) Bool)"""

#: length additivity locates interior points (the converse of between_if).
#: Part of the metric theory the encoder supplies alongside real arithmetic;
#: plane-valid, and fuzzed by the coordinate oracle like any metric rule.
_METRIC_COMPLETION = (
    "; metric completion: length additivity locates interior points\n"
    "(assert (forall ((x Point) (y Point) (z Point)) "
    "(=> (and (not (= x y)) (not (= y z)) "
    "(= (+ (segLen x y) (segLen y z)) (segLen x z))) (between x y z))))"
)


@dataclass(frozen=True)
class EncodeOptions:
    """Knobs for quantifier handling; defaults match the shipped engine.

    Construction rules are never asserted as quantified axioms: their
    existential conclusions send the solver's model search into unbounded
    object creation.  Instead they are instantiated over the query's ground
    objects for `ground_rounds` rounds (skolem witnesses become fresh
    guarded constants).  Witnesses of one round join the pool of the next;
    skolem terms of assumed theorems never do, which keeps construction
    power finite.
    """

    triggers: bool = False
    metric_completion: bool = True
    ground_rounds: int = 1
    ground_cap: int = 24  # instantiation tuples per rule per round
    #: how the negation of an existential consequent conclusion is encoded:
    #: "candidates" refutes the conclusion at a finite set of ground witness
    #: candidates (sound, solver-friendly, incomplete); "forall" asserts the
    #: universally quantified negation (complete but lets the quantifier
    #: machinery wander)
    goal_negation: str = "candidates"
    goal_candidate_cap: int = 64

    def with_rounds(self, rounds: int) -> "EncodeOptions":
        return EncodeOptions(
            self.triggers,
            self.metric_completion,
            rounds,
            self.ground_cap,
            self.goal_negation,
            self.goal_candidate_cap,
        )


@dataclass(frozen=True)
class SmtScript:
    text: str

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Goal:
    """What a refutation query must establish: exists ex, /\\ clauses."""

    clauses: tuple[Clause, ...]
    existentials: tuple[Var, ...] = ()

    @staticmethod
    def of_clauses(clauses: Sequence[Clause]) -> "Goal":
        return Goal(tuple(clauses))


def _script(lines: list[str], opts: EncodeOptions) -> SmtScript:
    head = [_DECLS]
    if opts.metric_completion:
        head.append(_METRIC_COMPLETION)
    return SmtScript("\n".join([*head, *lines, "(check-sat)"]) + "\n")


def _split_background(background: RuleSet) -> tuple[list[Rule], list[Rule]]:
    """(quantified rules, ground-instantiated construction rules)."""
    from .rules import RuleKind

    quantified: list[Rule] = []
    grounded: list[Rule] = []
    for rule in background:
        if rule.kind is RuleKind.SUPERPOSITION:
            raise EncodingError("the superposition rule cannot enter a background")
        if rule.kind is RuleKind.CONSTRUCTION:
            grounded.append(rule)
        else:
            quantified.append(rule)
    return quantified, grounded


def _background_lines(
    background: RuleSet, opts: EncodeOptions, pool: dict[Sort, list[str]]
) -> list[str]:
    """Assert non-construction rules as quantifiers and construction rules as
    bounded ground instances over (and growing) the object pool."""
    quantified, grounded = _split_background(background)
    lines = []
    for rule in quantified:
        lines.append(f"; rule {rule.name}")
        lines.append(encode_statement_axiom(rule.statement, rule if opts.triggers else None))
    if grounded:
        lines.extend(_ground_construction_lines(grounded, pool, opts))
    return lines


def _ground_construction_lines(
    rules: list[Rule],
    pool: dict[Sort, list[str]],
    opts: EncodeOptions,
    caps: Optional[dict[str, int]] = None,
    grow_pool_from: Optional[set[str]] = None,
) -> list[str]:
    """Guarded ground instances of construction-shaped rules over the pool.

    `caps` overrides the per-rule tuple budget; rules named in
    `grow_pool_from` (default: all) feed their witnesses into later rounds.
    """
    import itertools

    from .ast import subst_clause
    from .sugar import desugar_theorem

    lines: list[str] = []
    seen: set[tuple] = set()
    fresh = 0
    for rnd in range(opts.ground_rounds):
        snapshot = {s: list(names) for s, names in pool.items()}
        new_names: list[tuple[Sort, str]] = []
        for rule in rules:
            stmt = desugar_theorem(rule.statement)
            cap = (caps or {}).get(rule.name, opts.ground_cap)
            domains = [snapshot.get(v.sort, []) for v in stmt.universals]
            count = 0
            for tup in itertools.product(*domains):
                if count >= cap:
                    break
                key = (rule.name, tup)
                if key in seen:
                    continue
                seen.add(key)
                count += 1
                mapping = {
                    Var(u.name, u.sort): Var(name, u.sort)
                    for u, name in zip(stmt.universals, tup)
                }
                wits: dict[Var, Var] = {}
                for ex in stmt.existentials:
                    wname = f"w{rnd}_{fresh}_{ex.name}".replace("'", "_p")
                    fresh += 1
                    wits[Var(ex.name, ex.sort)] = Var(wname, ex.sort)
                    lines.append(f"(declare-const {sym(wname)} {ex.sort.value})")
                    if grow_pool_from is None or rule.name in grow_pool_from:
                        new_names.append((ex.sort, wname))
                full = {**mapping, **wits}
                posts = _conj([encode_clause(subst_clause(c, full)) for c in stmt.postconditions])
                if stmt.preconditions:
                    pres = _conj([encode_clause(subst_clause(c, mapping)) for c in stmt.preconditions])
                    lines.append(f"(assert (=> {pres} {posts}))")
                else:
                    lines.append(f"(assert {posts})")
        for sort, name in new_names:
            pool.setdefault(sort, []).append(name)
    if lines:
        lines.insert(0, "; construction rules, ground instances")
    return lines


def _pool_of(objects: Sequence[Var]) -> dict[Sort, list[str]]:
    pool: dict[Sort, list[str]] = {Sort.POINT: [], Sort.LINE: [], Sort.CIRCLE: []}
    for v in objects:
        pool[v.sort].append(v.name)
    return pool


def encode_refutation(
    background: RuleSet,
    objects: Sequence[Var],
    facts: Sequence[Clause],
    goal: Goal,
    opts: EncodeOptions = EncodeOptions(),
) -> SmtScript:
    """Background + objects + facts + negated goal; UNSAT proves the goal."""
    lines = [f"(declare-const {sym(v.name)} {v.sort.value})" for v in objects]
    lines.extend(_background_lines(background, opts, _pool_of(objects)))
    for cl in facts:
        lines.append(f"(assert {encode_clause(cl)})")
    if not goal.clauses:
        lines.append("(assert false)")
    else:
        body = _conj([encode_clause(c) for c in goal.clauses])
        if goal.existentials:
            lines.append(f"(assert (forall ({_binders(goal.existentials)}) (not {body})))")
        else:
            lines.append(f"(assert (not {body}))")
    return _script(lines, opts)


def encode_implication(
    antecedent: TheoremStatement,
    consequent: TheoremStatement,
    background: RuleSet,
    opts: EncodeOptions = EncodeOptions(),
) -> SmtScript:
    """UNSAT means antecedent => consequent under the background theory."""
    lines = ["; consequent universals"]
    for v in consequent.universals:
        lines.append(f"(declare-const {sym(v.name)} {v.sort.value})")
    pool = _pool_of(consequent.universals)
    lines.extend(_background_lines(background, opts, pool))
    lines.append("; antecedent, skolemized")
    sk_lines, sk_apps = _skolemized_with_apps(antecedent, "ant", consequent.universals)
    lines.extend(sk_lines)
    lines.append("; consequent preconditions")
    for cl in consequent.preconditions:
        lines.append(f"(assert {encode_clause(cl)})")
    lines.append("; negated consequent conclusion")
    if not consequent.postconditions:
        lines.append("(assert false)")
    else:
        body = _conj([encode_clause(c) for c in consequent.postconditions])
        if not consequent.existentials:
            lines.append(f"(assert (not {body}))")
        elif opts.goal_negation == "forall":
            lines.append(
                f"(assert (forall ({_binders(consequent.existentials)}) (not {body})))"
            )
        else:
            lines.extend(
                _negated_goal_at_candidates(consequent, pool, sk_apps, opts)
            )
    return _script(lines, opts)


def _skolemized_with_apps(
    stmt: TheoremStatement, prefix: str, universals: Sequence[Var]
) -> tuple[list[str], dict[Sort, list[str]]]:
    """Skolemized assertion plus ground applications of the skolem functions
    at the order-preserving per-sort assignment of the given universals."""
    lines = encode_statement_skolemized(stmt, prefix)
    apps: dict[Sort, list[str]] = {s: [] for s in Sort}
    by_sort: dict[Sort, list[str]] = {s: [] for s in Sort}
    for v in universals:
        by_sort[v.sort].append(sym(v.name))
    assignment: list[str] = []
    counters = {s: 0 for s in Sort}
    for u in stmt.universals:
        pool = by_sort[u.sort]
        if counters[u.sort] >= len(pool):
            return lines, apps  # no type-correct ground application
        assignment.append(pool[counters[u.sort]])
        counters[u.sort] += 1
    for i, ex in enumerate(stmt.existentials):
        fname = f"{prefix}_sk{i}_{ex.name}" if ex.name.isascii() and ex.name.isalnum() else f"{prefix}_sk{i}"
        fname = fname.replace("'", "_p")
        app = f"({fname} " + " ".join(assignment) + ")" if stmt.universals else fname
        apps[ex.sort].append(app)
    return lines, apps


def _negated_goal_at_candidates(
    consequent: TheoremStatement,
    pool: dict[Sort, list[str]],
    sk_apps: dict[Sort, list[str]],
    opts: EncodeOptions,
) -> list[str]:
    """Refute the conclusion at every candidate witness tuple.

    Sound: unsat means the conclusion is provable at one of the candidates,
    hence the existential holds.  The candidate set is the consequent's own
    objects, the grounding witnesses, and the antecedent's skolem terms.
    """
    import itertools

    from .ast import subst_clause

    candidates: dict[Sort, list[str]] = {}
    for sort in Sort:
        names = list(dict.fromkeys([*pool.get(sort, []), *sk_apps.get(sort, [])]))
        candidates[sort] = names
    domains = [candidates[ex.sort] for ex in consequent.existentials]
    lines: list[str] = []
    count = 0
    for tup in itertools.product(*domains):
        if count >= opts.goal_candidate_cap:
            break
        count += 1
        # candidate terms are raw SMT strings; splice them in textually
        body = _conj([encode_clause(c) for c in consequent.postconditions])
        for ex, term in zip(consequent.existentials, tup):
            body = re.sub(rf"(?<=[\s(]){re.escape(sym(ex.name))}(?=[\s)])", term.replace("\\", "\\\\"), body)
        lines.append(f"(assert (not {body}))")
    if not lines:
        # no candidates of the right sorts: fall back to the quantified form
        body = _conj([encode_clause(c) for c in consequent.postconditions])
        lines.append(
            f"(assert (forall ({_binders(consequent.existentials)}) (not {body})))"
        )
    return lines


def encode_statement_consistency(
    stmt: TheoremStatement,
    background: RuleSet,
    whole_statement: bool = True,
    opts: EncodeOptions = EncodeOptions(),
) -> SmtScript:
    """Satisfiability of a statement under the background theory.

    whole_statement=True asserts the statement as a quantified axiom — UNSAT
    means no model of the background rules satisfies it — and additionally
    unfolds the statement over the grounding pool alongside the construction
    rules, since its hypotheses rarely mention every bound variable and
    instantiation engines need the ground handles.  False keeps only fresh
    constants plus the preconditions (the weaker probe).
    """
    from .rules import Origin, Rule, RuleKind

    if whole_statement:
        quantified, grounded = _split_background(background)
        lines = []
        for rule in quantified:
            lines.append(f"; rule {rule.name}")
            lines.append(encode_statement_axiom(rule.statement, rule if opts.triggers else None))
        lines.append("; candidate statement as an axiom")
        lines.append(encode_statement_axiom(stmt))
        # seed configuration, itself constructible by arbitrary_point,
        # distinct_points, and line_from_points
        lines.append("; seed objects")
        lines.append("(declare-const seed_p0 Point)")
        lines.append("(declare-const seed_p1 Point)")
        lines.append("(declare-const seed_l0 Line)")
        lines.append("(assert (not (= seed_p0 seed_p1)))")
        lines.append("(assert (onLine seed_p0 seed_l0))")
        lines.append("(assert (onLine seed_p1 seed_l0))")
        pool = _pool_of(
            (
                Var("seed_p0", Sort.POINT),
                Var("seed_p1", Sort.POINT),
                Var("seed_l0", Sort.LINE),
            )
        )
        candidate = Rule(
            "candidate-statement", stmt, RuleKind.CONSTRUCTION, Origin.REGISTERED, core=False
        )
        caps = {r.name: min(opts.ground_cap, 6) for r in grounded}
        caps["candidate-statement"] = max(opts.ground_cap, 256)
        lines.extend(
            _ground_construction_lines(
                [*grounded, candidate],
                pool,
                opts,
                caps=caps,
                grow_pool_from={r.name for r in grounded},
            )
        )
    else:
        lines = [f"(declare-const {sym(v.name)} {v.sort.value})" for v in stmt.universals]
        lines.extend(_background_lines(background, opts, _pool_of(stmt.universals)))
        lines.append("; candidate statement preconditions only")
        for cl in stmt.preconditions:
            lines.append(f"(assert {encode_clause(cl)})")
    return _script(lines, opts)


# ---------------------------------------------------------------------------
# Solver subprocess


@dataclass(frozen=True)
class SolverVerdict:
    kind: str  # unsat | sat | unknown | timeout | error
    message: str = ""

    def __str__(self) -> str:
        return self.kind

    @property
    def is_unsat(self) -> bool:
        return self.kind == "unsat"


UNSAT = SolverVerdict("unsat")
SAT = SolverVerdict("sat")
UNKNOWN = SolverVerdict("unknown")
TIMEOUT = SolverVerdict("timeout")


class SolverNotFound(RuntimeError):
    pass


def discover_solver(explicit: Optional[str] = None) -> str:
    """Solver executable: explicit > $E3_SOLVER > z3 > cvc5 > bundled wasm z3."""
    for cand in (explicit, os.environ.get("E3_SOLVER")):
        if cand:
            path = shutil.which(cand) or cand
            if not Path(path).exists():
                raise SolverNotFound(f"solver executable {cand!r} not found")
            return path
    for name in ("z3", "cvc5", "cvc4", "e3-wasm-z3"):
        path = shutil.which(name)
        if path:
            return path
    from .solver_shim import node_available, shim_path

    if node_available() and shim_path().exists():
        return "e3geo-builtin-wasm-z3"
    raise SolverNotFound(
        "no SMT solver available: install z3/cvc5, or node + `npm install -g "
        "z3-solver` for the bundled WebAssembly build"
    )


def _solver_argv(solver: str, timeout_secs: float, extra: tuple[str, ...]) -> list[str]:
    base = os.path.basename(solver)
    ms = max(1, int(timeout_secs * 1000))
    if solver == "e3geo-builtin-wasm-z3":
        import shutil as _sh

        from .solver_shim import shim_path

        return [_sh.which("node") or "node", str(shim_path()), f"--timeout-ms={ms}", *extra]
    if "e3-wasm-z3" in base:
        return [solver, f"--timeout-ms={ms}", *extra]
    if "z3" in base:
        return [solver, "-in", "-smt2", f"-t:{ms}", *extra]
    if "cvc" in base:
        return [solver, "--lang=smt2", f"--tlimit={ms}", *extra]
    return [solver, *extra]


@dataclass
class SolverConfig:
    solver: Optional[str] = None  # path; discovered lazily when None
    timeout_secs: float = 60.0
    extra_args: tuple[str, ...] = ()
    dump_dir: Optional[Path] = None
    encode: EncodeOptions = EncodeOptions()
    _resolved: Optional[str] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.timeout_secs <= 0:
            raise ValueError("timeout must be positive")
        env_t = os.environ.get("E3_TIMEOUT_SECS")
        if env_t and self.timeout_secs == 60.0:
            self.timeout_secs = float(env_t)

    def resolved_solver(self) -> str:
        if self._resolved is None:
            self._resolved = discover_solver(self.solver)
        return self._resolved


@dataclass(frozen=True)
class QueryResult:
    verdict: SolverVerdict
    wall_secs: float
    query_id: str


#: extra wall-clock allowance for process startup before the hard kill
_KILL_GRACE_SECS = 10.0

_VERDICT_TOKENS = {"sat": SAT, "unsat": UNSAT, "unknown": UNKNOWN, "timeout": TIMEOUT}


def run_solver(script: SmtScript, cfg: SolverConfig, query_id: str = "query") -> QueryResult:
    """Spawn the solver, feed the script on stdin, map its answer token.

    Unsat is reported only when the solver printed "unsat"; a hard kill at
    the timeout yields the timeout verdict, and anything unparseable is a
    solver error.
    """
    if cfg.dump_dir is not None:
        cfg.dump_dir.mkdir(parents=True, exist_ok=True)
        (cfg.dump_dir / f"{query_id}.smt2").write_text(script.text, encoding="utf-8")
    solver = cfg.resolved_solver()
    argv = _solver_argv(solver, cfg.timeout_secs, cfg.extra_args)
    started = time.monotonic()
    try:
        proc = subprocess.run(
            argv,
            input=script.text.encode("utf-8"),
            capture_output=True,
            timeout=cfg.timeout_secs + _KILL_GRACE_SECS,
        )
    except FileNotFoundError as e:
        raise SolverNotFound(f"cannot spawn solver {argv[0]!r}: {e}")
    except subprocess.TimeoutExpired:
        return QueryResult(TIMEOUT, time.monotonic() - started, query_id)
    wall = time.monotonic() - started
    out = proc.stdout.decode("utf-8", "replace")
    for line in out.splitlines():
        tok = line.strip()
        if tok in _VERDICT_TOKENS:
            return QueryResult(_VERDICT_TOKENS[tok], wall, query_id)
    message = (out + "\n" + proc.stderr.decode("utf-8", "replace")).strip()
    return QueryResult(SolverVerdict("error", message[:2000]), wall, query_id)
