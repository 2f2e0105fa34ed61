"""The equivalence engine: logical equivalence, contradiction detection, and
clause-by-clause approximate equivalence between a ground truth and a
predicted theorem statement.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ast import (
    Clause,
    Sort,
    TheoremStatement,
    Var,
    substitute,
    well_formed,
)
from .rules import Mode, Origin, RuleSet, background_for, builtin_rules
from .smt import (
    EncodeOptions,
    Goal,
    QueryResult,
    SolverConfig,
    encode_implication,
    encode_refutation,
    encode_statement_consistency,
    run_solver,
)
from .sugar import desugar_theorem, syntactic_eq

#: grounding rounds for the contradiction check, which must grow its object
#: pool from nothing before the candidate statement can be exercised
_CONSISTENCY_ROUNDS = 2


@dataclass
class QueryLog:
    entries: list[QueryResult] = field(default_factory=list)

    def add(self, r: QueryResult) -> QueryResult:
        self.entries.append(r)
        return r

    def to_list(self) -> list[dict]:
        return [
            {"id": e.query_id, "verdict": e.verdict.kind, "wall_secs": round(e.wall_secs, 3)}
            for e in self.entries
        ]


def _equivalence_background(helpers: Optional[RuleSet]) -> RuleSet:
    bg = background_for(Mode.EQUIVALENCE)
    if helpers is not None:
        extra = [r for r in helpers if r.origin is Origin.REGISTERED]
        if extra:
            bg = RuleSet([*bg, *extra])
    return bg


def check_implication(
    antecedent: TheoremStatement,
    consequent: TheoremStatement,
    cfg: SolverConfig,
    helpers: Optional[RuleSet] = None,
    query_id: str = "implication",
    log: Optional[QueryLog] = None,
) -> QueryResult:
    """Unsat means antecedent => consequent under the equivalence theory."""
    bg = _equivalence_background(helpers)
    script = encode_implication(
        desugar_theorem(antecedent), desugar_theorem(consequent), bg, cfg.encode
    )
    result = run_solver(script, cfg, query_id)
    if log is not None:
        log.add(result)
    return result


def contradiction_check(
    stmt: TheoremStatement,
    cfg: SolverConfig,
    helpers: Optional[RuleSet] = None,
    preconditions_only: bool = False,
    query_id: str = "contradiction",
    log: Optional[QueryLog] = None,
) -> bool:
    """True when the statement cannot hold in any model of the theory.

    The default asserts the whole statement as a quantified axiom; with
    preconditions_only=True only fresh constants plus the hypotheses are
    asserted (the weaker vacuity probe).
    """
    bg = _equivalence_background(helpers)
    opts = cfg.encode.with_rounds(max(cfg.encode.ground_rounds, _CONSISTENCY_ROUNDS))
    script = encode_statement_consistency(
        desugar_theorem(stmt), bg, whole_statement=not preconditions_only, opts=opts
    )
    result = run_solver(script, cfg, query_id)
    if log is not None:
        log.add(result)
    return result.verdict.is_unsat


VERDICT_EQUIVALENT = "equivalent"
VERDICT_FORWARD_ONLY = "forward_only"
VERDICT_BACKWARD_ONLY = "backward_only"
VERDICT_NEITHER = "neither"
VERDICT_PRED_UNSAT = "pred_unsat"


@dataclass
class EquivalenceReport:
    forward: str  # verdict of the gt => pred attempt
    backward: str  # verdict of the pred => gt attempt
    pred_contradiction: bool
    verdict: str
    syntactic_match: bool
    queries: list[dict]
    wall_secs: float

    def to_dict(self, include_timings: bool = False) -> dict:
        """Timings are volatile, so the canonical form omits them; batch
        reports must be byte-identical across worker counts."""
        queries = self.queries
        if not include_timings:
            queries = [{"id": q["id"], "verdict": q["verdict"]} for q in queries]
        out = {
            "verdict": self.verdict,
            "forward": self.forward,
            "backward": self.backward,
            "pred_contradiction": self.pred_contradiction,
            "syntactic_match": self.syntactic_match,
            "queries": queries,
        }
        if include_timings:
            out["wall_secs"] = round(self.wall_secs, 3)
        return out


def _classify(forward_unsat: bool, backward_unsat: bool, contradiction: bool) -> str:
    if contradiction:
        return VERDICT_PRED_UNSAT
    if forward_unsat and backward_unsat:
        return VERDICT_EQUIVALENT
    if forward_unsat:
        return VERDICT_FORWARD_ONLY
    if backward_unsat:
        return VERDICT_BACKWARD_ONLY
    return VERDICT_NEITHER


def check_equivalence(
    gt: TheoremStatement,
    pred: TheoremStatement,
    cfg: SolverConfig,
    helpers: Optional[RuleSet] = None,
    query_prefix: str = "equiv",
) -> EquivalenceReport:
    """Attempt to prove gt <=> pred, with a contradiction check on pred."""
    for name, stmt in (("ground truth", gt), ("prediction", pred)):
        diags = well_formed(stmt)
        if diags:
            raise ValueError(f"{name} is ill-formed: {diags[0]}")
    started = time.monotonic()
    if syntactic_eq(gt, pred):
        return EquivalenceReport(
            forward="unsat",
            backward="unsat",
            pred_contradiction=False,
            verdict=VERDICT_EQUIVALENT,
            syntactic_match=True,
            queries=[],
            wall_secs=time.monotonic() - started,
        )
    log = QueryLog()
    contradiction = contradiction_check(
        pred, cfg, helpers, query_id=f"{query_prefix}.contradiction", log=log
    )
    fwd = check_implication(gt, pred, cfg, helpers, f"{query_prefix}.gt_implies_pred", log)
    bwd = check_implication(pred, gt, cfg, helpers, f"{query_prefix}.pred_implies_gt", log)
    verdict = _classify(fwd.verdict.is_unsat, bwd.verdict.is_unsat, contradiction)
    return EquivalenceReport(
        forward=fwd.verdict.kind,
        backward=bwd.verdict.kind,
        pred_contradiction=contradiction,
        verdict=verdict,
        syntactic_match=False,
        queries=log.to_list(),
        wall_secs=time.monotonic() - started,
    )


# ---------------------------------------------------------------------------
# Approximate equivalence


class ShapeMismatch(ValueError):
    """Binder shapes differ, so no unification of bound variables exists."""


@dataclass(frozen=True)
class Unification:
    mapping: tuple[tuple[Var, Var], ...]  # prediction var -> ground-truth var
    score: float

    def as_dict(self) -> dict[Var, Var]:
        return dict(self.mapping)

    def to_json(self) -> dict:
        return {
            "mapping": {p.name: g.name for p, g in self.mapping},
            "score": round(self.score, 4),
        }


def _lcs_len(a: str, b: str) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for ch in a:
        cur = [0]
        for j, bj in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if ch == bj else max(prev[j], cur[-1]))
        prev = cur
    return prev[-1]


def name_similarity(a: str, b: str) -> float:
    """Normalized longest-common-subsequence similarity of case-folded names."""
    a, b = a.casefold(), b.casefold()
    if not a and not b:
        return 1.0
    return 2.0 * _lcs_len(a, b) / (len(a) + len(b))


def _group_by_sort(vars_: Sequence[Var]) -> dict[Sort, list[Var]]:
    out: dict[Sort, list[Var]] = {}
    for v in vars_:
        out.setdefault(v.sort, []).append(v)
    return out


def rank_unifications(
    gt: TheoremStatement,
    pred: TheoremStatement,
    n: int = 5,
    permutation_cap: int = 40320,
) -> list[Unification]:
    """The best n sort-respecting bijections from prediction binders to
    ground-truth binders, scored by mean name similarity.

    Universals map to universals and existentials to existentials; a per-sort
    count mismatch in either group raises ShapeMismatch.  Sorts whose
    permutation count exceeds the cap are matched greedily by pairwise score
    instead of enumerated.
    """
    if n < 1:
        raise ValueError("n must be positive")
    group_choices: list[list[list[tuple[Var, Var]]]] = []
    for gt_vars, pred_vars, label in (
        (gt.universals, pred.universals, "universal"),
        (gt.existentials, pred.existentials, "existential"),
    ):
        gt_sorts = _group_by_sort(gt_vars)
        pred_sorts = _group_by_sort(pred_vars)
        if {s: len(v) for s, v in gt_sorts.items()} != {
            s: len(v) for s, v in pred_sorts.items()
        }:
            raise ShapeMismatch(
                f"{label} binder counts differ per sort: "
                f"ground truth {[(s.value, len(v)) for s, v in sorted(gt_sorts.items(), key=lambda kv: kv[0].value)]} vs "
                f"prediction {[(s.value, len(v)) for s, v in sorted(pred_sorts.items(), key=lambda kv: kv[0].value)]}"
            )
        for sort in sorted(gt_sorts, key=lambda s: s.value):
            gvs, pvs = gt_sorts[sort], pred_sorts[sort]
            perms_count = 1
            for k in range(2, len(gvs) + 1):
                perms_count *= k
            if perms_count > permutation_cap:
                group_choices.append([_greedy_match(pvs, gvs)])
            else:
                choices = [
                    list(zip(pvs, perm)) for perm in itertools.permutations(gvs)
                ]
                group_choices.append(choices)

    candidates: list[Unification] = []
    for combo in itertools.product(*group_choices):
        pairs = tuple(p for group in combo for p in group)
        score = (
            sum(name_similarity(p.name, g.name) for p, g in pairs) / len(pairs)
            if pairs
            else 1.0
        )
        candidates.append(Unification(pairs, score))
    candidates.sort(key=lambda u: (-u.score, tuple((p.name, g.name) for p, g in u.mapping)))
    return candidates[:n]


def _greedy_match(pvs: list[Var], gvs: list[Var]) -> list[tuple[Var, Var]]:
    remaining = list(gvs)
    out: list[tuple[Var, Var]] = []
    for p in pvs:
        best = max(remaining, key=lambda g: (name_similarity(p.name, g.name), g.name))
        remaining.remove(best)
        out.append((p, best))
    return out


@dataclass
class StepCount:
    proved: int
    total: int

    def to_json(self) -> dict:
        return {"proved": self.proved, "total": self.total}


@dataclass
class UnificationOutcome:
    unification: Unification
    steps: list[StepCount]  # step1..step4
    preconditions_equivalent: bool
    solved_ratio: float

    def to_json(self) -> dict:
        return {
            "unification": self.unification.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "preconditions_equivalent": self.preconditions_equivalent,
            "solved_ratio": round(self.solved_ratio, 4),
        }


@dataclass
class ApproxReport:
    eligible: bool
    outcomes: list[UnificationOutcome]
    best_ratio: float
    reason: str = ""
    queries: list[dict] = field(default_factory=list)
    wall_secs: float = 0.0

    def to_dict(self) -> dict:
        return {
            "eligible": self.eligible,
            "reason": self.reason,
            "best_ratio": round(self.best_ratio, 4),
            "unifications": [o.to_json() for o in self.outcomes],
            "queries": self.queries,
            "wall_secs": round(self.wall_secs, 3),
        }


def approx_equivalence(
    gt: TheoremStatement,
    pred: TheoremStatement,
    cfg: SolverConfig,
    n: int = 5,
    helpers: Optional[RuleSet] = None,
    query_prefix: str = "approx",
) -> ApproxReport:
    """Clause-by-clause provability bookkeeping over candidate unifications."""
    started = time.monotonic()
    try:
        unifications = rank_unifications(gt, pred, n)
    except ShapeMismatch as e:
        return ApproxReport(False, [], 0.0, reason=str(e), wall_secs=time.monotonic() - started)

    bg = _equivalence_background(helpers)
    gt_d = desugar_theorem(gt)
    objects = [*gt_d.universals, *gt_d.existentials]
    log = QueryLog()
    outcomes: list[UnificationOutcome] = []
    for ui, unif in enumerate(unifications):
        pred_i = desugar_theorem(substitute(pred, unif.as_dict()))

        def prove_each(
            assumed: Sequence[Clause], targets: Sequence[Clause], step: int
        ) -> StepCount:
            proved = 0
            for ci, target in enumerate(targets):
                qid = f"{query_prefix}.u{ui}.s{step}.c{ci}"
                script = encode_refutation(
                    bg, objects, list(assumed), Goal.of_clauses([target]), cfg.encode
                )
                result = log.add(run_solver(script, cfg, qid))
                if result.verdict.is_unsat:
                    proved += 1
            return StepCount(proved, len(targets))

        s1 = prove_each(gt_d.preconditions, pred_i.preconditions, 1)
        s2 = prove_each(pred_i.preconditions, gt_d.preconditions, 2)
        pre_equiv = s1.proved == s1.total and s2.proved == s2.total
        extra: tuple[Clause, ...] = ()
        if pre_equiv:
            extra = gt_d.preconditions + pred_i.preconditions
        s3 = prove_each(gt_d.postconditions + extra, pred_i.postconditions, 3)
        s4 = prove_each(pred_i.postconditions + extra, gt_d.postconditions, 4)
        steps = [s1, s2, s3, s4]
        total = sum(s.total for s in steps)
        ratio = (sum(s.proved for s in steps) / total) if total else 1.0
        outcomes.append(UnificationOutcome(unif, steps, pre_equiv, ratio))

    best = max((o.solved_ratio for o in outcomes), default=0.0)
    return ApproxReport(
        True, outcomes, best, queries=log.to_list(), wall_secs=time.monotonic() - started
    )
