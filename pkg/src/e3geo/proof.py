"""Tactic interpreter: checks proof scripts against theorem statements,
discharging implicit diagrammatic steps by SMT refutation.

A proof threads a stack of goal frames.  `euclid_apply` first looks for the
instantiated rule precondition syntactically in the fact set (modulo the
theory-sound canonicalizations in e3geo.canon); failing that it issues one
refutation query for the whole precondition and records the step as a
diagrammatic gap.  Verification requires every branch closed and every gap
verdict unsat.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ast import (
    Clause,
    Falsum,
    Literal,
    Sort,
    Span,
    TheoremStatement,
    Var,
    subst_clause,
)
from .canon import canon_literal
from .parser import ParseError, ProofScript, SegArg, Tactic, parse_formula_clauses, render_clause
from .rules import Mode, Rule, RuleSet, background_for
from .smt import (
    EncodeOptions,
    Goal,
    QueryResult,
    SolverConfig,
    encode_refutation,
    run_solver,
)
from .sugar import desugar_literal, expandable_as_conjunction


class TacticError(Exception):
    def __init__(self, message: str, span: Optional[Span] = None):
        self.span = span
        super().__init__(message)


@dataclass(frozen=True)
class Gap:
    """A precondition discharged (or not) by the symbolic engine."""

    rule: str
    missing: str  # rendered precondition conjunction
    verdict: str
    query_id: str
    branch: str


@dataclass
class Failure:
    reason: str
    span: Optional[Span]
    branch: str

    def __str__(self) -> str:
        at = f"{self.span.line}:{self.span.col}: " if self.span else ""
        return f"{at}{self.reason}"


@dataclass
class CheckReport:
    status: str  # "verified" | "failed"
    gaps: list[Gap]
    failures: list[Failure]
    branch_outcomes: dict[str, str]
    queries: int
    wall_secs: float

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "gaps": [
                {
                    "rule": g.rule,
                    "missing": g.missing,
                    "verdict": g.verdict,
                    "query_id": g.query_id,
                    "branch": g.branch,
                }
                for g in self.gaps
            ],
            "failures": [str(f) for f in self.failures],
            "branches": self.branch_outcomes,
            "solver_queries": self.queries,
            "wall_secs": round(self.wall_secs, 3),
        }


@dataclass
class ProofGoal:
    existentials: tuple[Var, ...]
    clauses: tuple[Clause, ...]


FALSE_GOAL = ProofGoal((), (Clause.of(Literal(False, Falsum())),))


@dataclass
class Frame:
    goal: ProofGoal
    facts: list[Clause]
    branch: str


def _desugared(clauses: Sequence[Clause]) -> list[Clause]:
    out: list[Clause] = []
    for cl in clauses:
        if cl.is_singleton and expandable_as_conjunction(cl.literals[0]):
            out.extend(Clause.of(l) for l in desugar_literal(cl.literals[0]))
        else:
            out.append(cl)
    return out


class ProofChecker:
    def __init__(
        self,
        thm: TheoremStatement,
        visible: RuleSet,
        cfg: SolverConfig,
        query_prefix: str = "proof",
    ):
        self.thm = thm
        self.visible = visible
        self.cfg = cfg
        self.background = background_for(Mode.DIAGRAMMATIC, visible)
        self.objects: dict[str, Var] = {}
        self.frames: list[Frame] = []
        self.gaps: list[Gap] = []
        self.failures: list[Failure] = []
        self.branch_outcomes: dict[str, str] = {}
        self.queries = 0
        self.query_prefix = query_prefix
        self.intros_done = False

    # -- plumbing -----------------------------------------------------------

    def _query(self, facts: Sequence[Clause], goal: Goal) -> QueryResult:
        self.queries += 1
        qid = f"{self.query_prefix}.q{self.queries:03d}"
        script = encode_refutation(
            self.background, list(self.objects.values()), facts, goal, self.cfg.encode
        )
        return run_solver(script, self.cfg, qid)

    def _fact_index(self, facts: Sequence[Clause]) -> set:
        idx = set()
        for cl in facts:
            if cl.is_singleton:
                idx.add(canon_literal(cl.literals[0]))
        return idx

    def _new_object(self, name: str, sort: Sort, span: Optional[Span]) -> Var:
        if name in self.objects:
            raise TacticError(f"object name {name!r} already in use", span)
        v = Var(name, sort)
        self.objects[name] = v
        return v

    def _env_sorts(self) -> dict[str, Sort]:
        return {n: v.sort for n, v in self.objects.items()}

    def _parse_ground(self, text: str, span: Optional[Span]) -> list[Clause]:
        try:
            clauses = parse_formula_clauses(text, self._env_sorts())
        except ParseError as e:
            raise TacticError(f"bad proposition: {e}", span)
        for cl in clauses:
            from .ast import clause_vars

            for v in clause_vars(cl):
                if v.name not in self.objects:
                    raise TacticError(f"unknown object {v.name!r} in proposition", span)
        return clauses

    # -- tactic implementations ----------------------------------------------

    def run(self, script: ProofScript) -> CheckReport:
        started = time.monotonic()
        goal = ProofGoal(self.thm.existentials, self.thm.postconditions)
        self.frames = [Frame(goal, [], "root")]
        try:
            self._run_block(list(script.tactics), toplevel=True)
            for frame in self.frames:
                self._fail(f"unclosed goal in branch {frame.branch}", None, frame.branch)
        except TacticError as e:
            branch = self.frames[0].branch if self.frames else "root"
            self._fail(str(e), e.span, branch)
        wall = time.monotonic() - started
        bad_gap = any(g.verdict != "unsat" for g in self.gaps)
        status = "verified" if not self.failures and not bad_gap else "failed"
        return CheckReport(
            status, self.gaps, self.failures, dict(self.branch_outcomes), self.queries, wall
        )

    def _fail(self, reason: str, span: Optional[Span], branch: str) -> None:
        self.failures.append(Failure(reason, span, branch))
        self.branch_outcomes[branch] = "failed"

    def _close_frame(self) -> None:
        frame = self.frames.pop(0)
        self.branch_outcomes.setdefault(frame.branch, "closed")

    def _run_block(self, tactics: list[Tactic], toplevel: bool = False) -> None:
        for t in tactics:
            if not self.frames:
                raise TacticError("no goals left", t.span)
            if t.kind == "bullet":
                self._run_bullet(t)
            else:
                self._apply_tactic(t)

    def _run_bullet(self, t: Tactic) -> None:
        if not self.frames:
            raise TacticError("bullet with no open goal", t.span)
        frame = self.frames[0]
        depth_before = len(self.frames)
        try:
            self._run_block(t.sub)
            if len(self.frames) >= depth_before:
                self._fail(
                    f"bullet did not close its goal (branch {frame.branch})",
                    t.span,
                    frame.branch,
                )
                # drop the focused goal and continue with the sibling branches
                del self.frames[0 : len(self.frames) - depth_before + 1]
        except TacticError as e:
            self._fail(str(e), e.span, frame.branch)
            del self.frames[0 : max(1, len(self.frames) - depth_before + 1)]

    def _apply_tactic(self, t: Tactic) -> None:
        frame = self.frames[0]
        handler = {
            "intros": self._tac_intros,
            "apply": self._tac_apply,
            "assert": self._tac_assert,
            "finish": self._tac_finish,
            "use": self._tac_use,
            "by_cases": self._tac_by_cases,
            "by_contra": self._tac_by_contra,
            "have": self._tac_have,
            "constructor": self._tac_constructor,
            "split_ands": self._tac_split_ands,
            "assumption": self._tac_assumption,
        }.get(t.kind)
        if handler is None:
            raise TacticError(f"unsupported tactic {t.kind}", t.span)
        handler(t, frame)

    def _tac_intros(self, t: Tactic, frame: Frame) -> None:
        if self.intros_done:
            raise TacticError("euclid_intros used twice", t.span)
        self.intros_done = True
        for v in self.thm.universals:
            self._new_object(v.name, v.sort, t.span)
        frame.facts.extend(_desugared(self.thm.preconditions))

    def _instantiate_args(self, rule: Rule, t: Tactic) -> dict[Var, Var]:
        universals = list(rule.statement.universals)
        supplied: list[Var] = []
        for arg in t.args:
            if isinstance(arg, SegArg):
                for name in (arg.a, arg.b):
                    v = self.objects.get(name)
                    if v is None:
                        raise TacticError(f"unknown object {name!r}", t.span)
                    supplied.append(v)
            else:
                v = self.objects.get(arg)
                if v is None:
                    raise TacticError(f"unknown object {arg!r}", t.span)
                supplied.append(v)
        if len(supplied) != len(universals):
            raise TacticError(
                f"{rule.name} expects {len(universals)} arguments, got {len(supplied)}",
                t.span,
            )
        mapping: dict[Var, Var] = {}
        for u, v in zip(universals, supplied):
            if u.sort is not v.sort:
                raise TacticError(
                    f"{rule.name}: argument {v.name} has sort {v.sort.value}, "
                    f"expected {u.sort.value}",
                    t.span,
                )
            mapping[Var(u.name, u.sort)] = v
        return mapping

    def _precondition_established(
        self, frame: Frame, clauses: list[Clause]
    ) -> Optional[bool]:
        """True when every precondition clause is syntactically in the facts."""
        idx = self._fact_index(frame.facts)
        for cl in clauses:
            if not any(canon_literal(l) in idx for l in cl.literals):
                return False
        return True

    def _tac_apply(self, t: Tactic, frame: Frame) -> None:
        try:
            rule = self.visible.lookup(t.rule)
        except KeyError:
            raise TacticError(f"unknown rule {t.rule!r}", t.span)
        mapping = self._instantiate_args(rule, t)
        stmt = rule.statement
        if len(t.binders) != len(stmt.existentials):
            raise TacticError(
                f"{rule.name} constructs {len(stmt.existentials)} objects, "
                f"but {len(t.binders)} binders were given",
                t.span,
            )
        pre = _desugared([subst_clause(c, mapping) for c in stmt.preconditions])
        if not self._precondition_established(frame, pre):
            result = self._query(frame.facts, Goal.of_clauses(pre))
            missing = " ∧ ".join(render_clause(c) for c in pre)
            self.gaps.append(
                Gap(rule.name, missing, result.verdict.kind, result.query_id, frame.branch)
            )
            if not result.verdict.is_unsat:
                raise TacticError(
                    f"precondition of {rule.name} not established "
                    f"({result.verdict}): {missing}",
                    t.span,
                )
        witness_map = dict(mapping)
        for binder, ex in zip(t.binders, stmt.existentials):
            w = self._new_object(binder, ex.sort, t.span)
            witness_map[Var(ex.name, ex.sort)] = w
        frame.facts.extend(
            _desugared([subst_clause(c, witness_map) for c in stmt.postconditions])
        )

    def _tac_assert(self, t: Tactic, frame: Frame) -> None:
        clauses = self._parse_ground(t.text, t.span)
        result = self._query(frame.facts, Goal.of_clauses(clauses))
        if not result.verdict.is_unsat:
            raise TacticError(
                f"euclid_assert not established ({result.verdict}): {t.text}", t.span
            )
        frame.facts.extend(_desugared(clauses))

    def _tac_finish(self, t: Tactic, frame: Frame) -> None:
        goal = Goal(frame.goal.clauses, frame.goal.existentials)
        result = self._query(frame.facts, goal)
        if not result.verdict.is_unsat:
            raise TacticError(f"euclid_finish failed ({result.verdict})", t.span)
        self._close_frame()

    def _tac_use(self, t: Tactic, frame: Frame) -> None:
        for name in t.binders:
            if not frame.goal.existentials:
                raise TacticError("use: no existential left in the goal", t.span)
            w = self.objects.get(name)
            if w is None:
                raise TacticError(
                    f"use: {name!r} is not a constructed object", t.span
                )
            ex = frame.goal.existentials[0]
            if w.sort is not ex.sort:
                raise TacticError(
                    f"use: {name} has sort {w.sort.value}, goal needs {ex.sort.value}",
                    t.span,
                )
            mapping = {Var(ex.name, ex.sort): w}
            frame.goal = ProofGoal(
                tuple(frame.goal.existentials[1:]),
                tuple(subst_clause(c, mapping) for c in frame.goal.clauses),
            )

    def _tac_by_cases(self, t: Tactic, frame: Frame) -> None:
        clauses = self._parse_ground(t.text, t.span)
        if len(clauses) != 1:
            raise TacticError(
                "by_cases condition must be a single clause", t.span
            )
        cond = clauses[0]
        negated = [Clause.of(l.negate()) for l in cond.literals]
        pos = Frame(frame.goal, frame.facts + _desugared([cond]), frame.branch + ".1")
        neg = Frame(
            frame.goal,
            frame.facts + [c for cl in negated for c in _desugared([cl])],
            frame.branch + ".2",
        )
        self.frames[0:1] = [pos, neg]

    def _tac_by_contra(self, t: Tactic, frame: Frame) -> None:
        if frame.goal.existentials:
            raise TacticError("by_contra on an existential goal", t.span)
        lits: list[Literal] = []
        for cl in frame.goal.clauses:
            if not cl.is_singleton:
                raise TacticError(
                    "by_contra needs a goal that is a conjunction of literals", t.span
                )
            lits.append(cl.literals[0].negate())
        if lits:
            frame.facts.append(Clause(tuple(lits)))
        frame.goal = ProofGoal((), FALSE_GOAL.clauses)

    def _tac_have(self, t: Tactic, frame: Frame) -> None:
        clauses = self._parse_ground(t.text, t.span)
        sub = Frame(ProofGoal((), tuple(clauses)), list(frame.facts), frame.branch + ".have")
        self.frames.insert(0, sub)
        depth = len(self.frames)
        self._run_block(t.sub)
        if len(self.frames) >= depth:
            raise TacticError("have block did not close its goal", t.span)
        frame.facts.extend(_desugared(clauses))

    def _tac_constructor(self, t: Tactic, frame: Frame) -> None:
        if frame.goal.existentials:
            raise TacticError("constructor on an existential goal", t.span)
        if len(frame.goal.clauses) < 2:
            raise TacticError("constructor needs a conjunction goal", t.span)
        first = Frame(
            ProofGoal((), frame.goal.clauses[:1]), list(frame.facts), frame.branch + ".l"
        )
        rest = Frame(
            ProofGoal((), frame.goal.clauses[1:]), list(frame.facts), frame.branch + ".r"
        )
        self.frames[0:1] = [first, rest]

    def _tac_split_ands(self, t: Tactic, frame: Frame) -> None:
        if frame.goal.existentials:
            raise TacticError("split_ands on an existential goal", t.span)
        if len(frame.goal.clauses) < 2:
            raise TacticError("split_ands needs a conjunction goal", t.span)
        subs = [
            Frame(ProofGoal((), (c,)), list(frame.facts), f"{frame.branch}.{i+1}")
            for i, c in enumerate(frame.goal.clauses)
        ]
        self.frames[0:1] = subs

    def _tac_assumption(self, t: Tactic, frame: Frame) -> None:
        if frame.goal.existentials or len(frame.goal.clauses) != 1:
            raise TacticError("assumption needs a single-clause goal", t.span)
        idx = self._fact_index(frame.facts)
        cl = frame.goal.clauses[0]
        if not any(canon_literal(l) in idx for l in cl.literals):
            raise TacticError("assumption: goal is not among the facts", t.span)
        self._close_frame()


def check_proof(
    thm: TheoremStatement,
    script: ProofScript,
    visible: RuleSet,
    cfg: SolverConfig,
    query_prefix: str = "proof",
) -> CheckReport:
    """Interpret the tactic script against the theorem statement."""
    return ProofChecker(thm, visible, cfg, query_prefix).run(script)
