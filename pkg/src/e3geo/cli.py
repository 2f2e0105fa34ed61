"""Command-line entry point.

Subcommands: parse, check-proof, equiv, approx, batch, fuzz-rules, rules.
Exit codes: 0 success with a positive verdict, 1 ran but the verdict was
negative, 2 usage or I/O error, 3 no SMT solver available.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .ast import well_formed
from .corpus import CorpusError, batch_evaluate, load_corpus
from .equiv import approx_equivalence, check_equivalence
from .fuzz import fuzz_rule, fuzzable
from .parser import ParseError, parse_proof, parse_theorem, render_proof, render_statement
from .proof import check_proof
from .rules import Mode, RuleKind, background_for, builtin_rules, register_theorem
from .smt import SolverConfig, SolverNotFound


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    kwargs = {}
    if args.solver:
        kwargs["solver"] = args.solver
    if args.timeout_secs is not None:
        kwargs["timeout_secs"] = args.timeout_secs
    if args.dump_smt:
        kwargs["dump_dir"] = Path(args.dump_smt)
    return SolverConfig(**kwargs)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SystemExit(f"e3: cannot read {path}: {e}")


def _write_json(path: str, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _load_helpers(paths: list[str]):
    """Register helper theorems from theorem files or corpus .jsonl files."""
    rules = builtin_rules()
    for raw in paths:
        p = Path(raw)
        files: list[Path]
        if p.is_dir():
            files = sorted(q for q in p.iterdir() if q.suffix in (".txt", ".thm", ".euclid"))
        else:
            files = [p]
        for f in files:
            if f.suffix == ".jsonl":
                for record in load_corpus(f):
                    rules = register_theorem(rules, record.id, record.statement)
                    for k, variant in enumerate(record.variants):
                        stmt = parse_theorem(variant, strict=False)
                        name = stmt.name or record.id + "'" * (k + 1)
                        rules = register_theorem(rules, name, stmt)
            else:
                stmt = parse_theorem(f.read_text(encoding="utf-8"), strict=False)
                name = stmt.name or f.stem
                rules = register_theorem(rules, name, stmt)
    return rules


def _cmd_parse(args: argparse.Namespace) -> int:
    text = _read(args.file)
    if args.proof:
        script = parse_proof(text)
        sys.stdout.write(render_proof(script))
        return 0
    stmt = parse_theorem(text, strict=False)
    diags = well_formed(stmt)
    print(render_statement(stmt))
    for d in diags:
        print(f"e3: diagnostic: {d}", file=sys.stderr)
    return 1 if diags else 0


def _cmd_check_proof(args: argparse.Namespace) -> int:
    thm = parse_theorem(_read(args.theorem))
    script = parse_proof(_read(args.proof))
    visible = _load_helpers(args.visible) if args.visible else builtin_rules()
    cfg = _solver_config(args)
    report = check_proof(thm, script, visible, cfg, query_prefix=Path(args.theorem).stem)
    doc = report.to_dict()
    if args.report:
        _write_json(args.report, doc)
    print(f"status: {report.status}")
    for g in report.gaps:
        print(f"gap [{g.verdict}] {g.rule}: {g.missing}  ({g.query_id})")
    for f in report.failures:
        print(f"failure: {f}")
    print(f"queries: {report.queries}  wall: {report.wall_secs:.1f}s")
    return 0 if report.verified else 1


def _cmd_equiv(args: argparse.Namespace) -> int:
    gt = parse_theorem(_read(args.ground_truth))
    pred = parse_theorem(_read(args.prediction))
    helpers = _load_helpers(args.helpers) if args.helpers else None
    cfg = _solver_config(args)
    report = check_equivalence(gt, pred, cfg, helpers=helpers)
    if args.json:
        _write_json(args.json, report.to_dict(include_timings=True))
    print(f"verdict: {report.verdict}")
    print(f"gt => pred: {report.forward}   pred => gt: {report.backward}")
    print(f"prediction contradictory: {report.pred_contradiction}")
    return 0 if report.verdict == "equivalent" else 1


def _cmd_approx(args: argparse.Namespace) -> int:
    gt = parse_theorem(_read(args.ground_truth))
    pred = parse_theorem(_read(args.prediction))
    helpers = _load_helpers(args.helpers) if args.helpers else None
    cfg = _solver_config(args)
    report = approx_equivalence(gt, pred, cfg, n=args.unifications, helpers=helpers)
    if args.json:
        _write_json(args.json, report.to_dict())
    if args.figure:
        from .figures import render_approx_figure

        render_approx_figure(report, args.figure)
    if not report.eligible:
        print(f"not eligible: {report.reason}")
        return 1
    print(f"best solved ratio: {report.best_ratio:.4f} over {len(report.outcomes)} unification(s)")
    for o in report.outcomes:
        steps = " ".join(f"{s.proved}/{s.total}" for s in o.steps)
        print(f"  score={o.unification.score:.3f} ratio={o.solved_ratio:.4f} steps: {steps}")
    return 0


def _cmd_batch(args: argparse.Namespace) -> int:
    try:
        records = load_corpus(args.corpus)
        predictions = _load_predictions(args.predictions)
    except CorpusError as e:
        print(f"e3: {e}", file=sys.stderr)
        return 2
    helpers = _load_helpers(args.helpers) if args.helpers else None
    cfg = _solver_config(args)
    report = batch_evaluate(records, predictions, cfg, workers=args.jobs, helpers=helpers)
    if args.json:
        _write_json(args.json, report.to_dict())
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    if args.figure:
        from .figures import render_batch_figure

        render_batch_figure(report, args.figure)
    print(report.table())
    return 0


def _load_predictions(path: str) -> dict[str, str]:
    text = _read(path)
    predictions: dict[str, str] = {}
    if text.lstrip().startswith("{") and "\n{" not in text.strip():
        doc = json.loads(text)
        if isinstance(doc, dict) and all(isinstance(v, str) for v in doc.values()):
            return doc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as e:
            raise CorpusError(f"{path}:{lineno}: malformed JSON: {e}")
        if "id" not in doc or "theorem" not in doc:
            raise CorpusError(f"{path}:{lineno}: prediction needs id and theorem fields")
        if doc["id"] in predictions:
            raise CorpusError(f"{path}:{lineno}: duplicate prediction for {doc['id']!r}")
        predictions[doc["id"]] = doc["theorem"]
    return predictions


def _cmd_fuzz_rules(args: argparse.Namespace) -> int:
    rules = builtin_rules()
    targets = []
    if args.rule:
        targets = [rules.lookup(args.rule)]
    else:
        targets = [r for r in rules if fuzzable(r) and r.core]
    bad = 0
    header = f"{'rule':<40} {'status':<16} {'filtered':>8} {'skipped':>8}"
    print(header)
    print("-" * len(header))
    for rule in targets:
        if not fuzzable(rule):
            print(f"{rule.name:<40} {'skip (construction)':<16}")
            continue
        res = fuzz_rule(rule, trials=args.trials, seed=args.seed)
        status = "ok" if res.ok else "COUNTEREXAMPLE"
        if not res.ok:
            bad += 1
        print(f"{rule.name:<40} {status:<16} {res.filtered_trials:>8} {res.skipped:>8}")
        if not res.ok:
            print(f"  model: {res.counterexample}")
    return 1 if bad else 0


def _cmd_rules(args: argparse.Namespace) -> int:
    rules = builtin_rules()
    if args.background:
        mode = Mode.EQUIVALENCE if args.background == "equivalence" else Mode.DIAGRAMMATIC
        rules = background_for(mode)
    for rule in rules:
        if args.kind and rule.kind.value != args.kind:
            continue
        if args.names_only:
            print(rule.name)
        else:
            print(f"[{rule.kind.value}] {render_statement(rule.statement, include_header=False)!s:.120s}")
            print(f"    name: {rule.name}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="e3",
        description="Euclidean geometry proof checking and theorem equivalence engine",
    )
    parser.add_argument("--solver", help="SMT solver executable (default: $E3_SOLVER or autodetect)")
    parser.add_argument("--timeout-secs", type=float, default=None, help="per-query timeout")
    parser.add_argument("--jobs", type=int, default=1, help="worker pool size for batch")
    parser.add_argument("--dump-smt", metavar="DIR", help="persist every SMT query under DIR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and canonically print a theorem or proof")
    p.add_argument("file")
    p.add_argument("--proof", action="store_true", help="treat the input as a tactic proof")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("check-proof", help="check a tactic proof against a theorem")
    p.add_argument("theorem")
    p.add_argument("proof")
    p.add_argument("--visible", action="append", default=[],
                   metavar="PATH", help="theorem files/dirs or corpus .jsonl to register as helper rules")
    p.add_argument("--report", metavar="OUT.json")
    p.set_defaults(fn=_cmd_check_proof)

    p = sub.add_parser("equiv", help="check logical equivalence of two statements")
    p.add_argument("ground_truth")
    p.add_argument("prediction")
    p.add_argument("--helpers", action="append", default=[], metavar="PATH")
    p.add_argument("--json", metavar="OUT.json")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("approx", help="clause-by-clause approximate equivalence")
    p.add_argument("ground_truth")
    p.add_argument("prediction")
    p.add_argument("--unifications", type=int, default=5, metavar="N")
    p.add_argument("--helpers", action="append", default=[], metavar="PATH")
    p.add_argument("--json", metavar="OUT.json")
    p.add_argument("--figure", metavar="OUT.png")
    p.set_defaults(fn=_cmd_approx)

    p = sub.add_parser("batch", help="grade a predictions file against a corpus")
    p.add_argument("corpus", help="JSON-lines corpus of ground-truth records")
    p.add_argument("predictions", help="JSON-lines (id, theorem) or a JSON object")
    p.add_argument("--helpers", action="append", default=[], metavar="PATH")
    p.add_argument("--json", metavar="OUT.json")
    p.add_argument("--csv", metavar="OUT.csv")
    p.add_argument("--figure", metavar="OUT.png")
    p.set_defaults(fn=_cmd_batch)

    p = sub.add_parser("fuzz-rules", help="fuzz rule soundness against the coordinate oracle")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rule", help="fuzz a single rule")
    p.set_defaults(fn=_cmd_fuzz_rules)

    p = sub.add_parser("rules", help="list the rule library")
    p.add_argument("--kind", choices=[k.value for k in RuleKind])
    p.add_argument("--background", choices=["diagrammatic", "equivalence"])
    p.add_argument("--names-only", action="store_true")
    p.set_defaults(fn=_cmd_rules)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"e3: parse error: {e}", file=sys.stderr)
        return 2
    except SolverNotFound as e:
        print(f"e3: {e}", file=sys.stderr)
        return 3
    except CorpusError as e:
        print(f"e3: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"e3: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
