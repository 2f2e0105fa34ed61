"""Corpus ingestion and deterministic batch grading.

A corpus is a JSON-lines file, one record per line:

    {"id": "proposition_1", "source": "elements", "informal": "...",
     "theorem": "∀ (a b : Point) ...", "proof": "euclid_intros\\n...",
     "category": "triangle", "variants": ["..."]}

Loading is all-or-nothing with positioned errors.  Batch evaluation grades
predictions against records under a worker pool and aggregates a
Table-1-style report; the report is identical for any worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .ast import TheoremStatement, well_formed
from .equiv import EquivalenceReport, check_equivalence
from .parser import ParseError, parse_theorem
from .rules import RuleSet
from .smt import SolverConfig

SOURCES = ("elements", "unigeo")
CATEGORIES = ("triangle", "similarity", "congruent", "quadrilateral", "parallel")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    source: str
    informal: str
    theorem: str
    statement: TheoremStatement
    proof: Optional[str] = None
    category: Optional[str] = None
    variants: tuple[str, ...] = ()


def load_corpus(path: str | Path) -> list[CorpusRecord]:
    """Parse and validate every record; any defect aborts the whole load."""
    path = Path(path)
    records: list[CorpusRecord] = []
    seen: dict[str, int] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                doc = json.loads(raw)
            except json.JSONDecodeError as e:
                raise CorpusError(f"{path}:{lineno}: malformed JSON: {e}")
            for key in ("id", "source", "theorem"):
                if key not in doc:
                    raise CorpusError(f"{path}:{lineno}: record missing {key!r}")
            rid = doc["id"]
            if rid in seen:
                raise CorpusError(
                    f"{path}:{lineno}: duplicate id {rid!r} (first seen on line {seen[rid]})"
                )
            seen[rid] = lineno
            if doc["source"] not in SOURCES:
                raise CorpusError(
                    f"{path}:{lineno}: unknown source {doc['source']!r} "
                    f"(expected one of {', '.join(SOURCES)})"
                )
            category = doc.get("category")
            if category is not None and category not in CATEGORIES:
                raise CorpusError(f"{path}:{lineno}: unknown category {category!r}")
            try:
                stmt = parse_theorem(doc["theorem"], strict=False)
            except ParseError as e:
                raise CorpusError(f"{path}:{lineno}: theorem for {rid!r} does not parse: {e}")
            diags = well_formed(stmt)
            if diags:
                raise CorpusError(
                    f"{path}:{lineno}: theorem for {rid!r} is ill-formed: {diags[0]}"
                )
            records.append(
                CorpusRecord(
                    id=rid,
                    source=doc["source"],
                    informal=doc.get("informal", ""),
                    theorem=doc["theorem"],
                    statement=stmt,
                    proof=doc.get("proof"),
                    category=category,
                    variants=tuple(doc.get("variants", ())),
                )
            )
    return records


MALFORMED = "malformed"

VERDICT_ORDER = (
    "equivalent",
    "forward_only",
    "backward_only",
    "neither",
    "pred_unsat",
    MALFORMED,
)


@dataclass
class RecordResult:
    id: str
    source: str
    verdict: str
    detail: Optional[EquivalenceReport] = None
    error: str = ""

    def to_dict(self) -> dict:
        out = {"id": self.id, "source": self.source, "verdict": self.verdict}
        if self.detail is not None:
            out["report"] = self.detail.to_dict()
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class BatchReport:
    results: list[RecordResult]
    counts: dict[str, int]
    per_source: dict[str, dict[str, float]]
    overall_equivalent_fraction: float
    wall_secs: float = 0.0

    def to_dict(self) -> dict:
        return {
            "schema": "e3geo.batch-report/1",
            "results": [r.to_dict() for r in self.results],
            "counts": self.counts,
            "per_source": self.per_source,
            "overall_equivalent_fraction": round(self.overall_equivalent_fraction, 6),
        }

    def consistency_check(self) -> None:
        if sum(self.counts.values()) != len(self.results):
            raise AssertionError("partition counts do not sum to the record count")
        recomputed = _aggregate(self.results)
        if recomputed[0] != self.counts:
            raise AssertionError("aggregate counts diverge from per-record rows")

    def table(self) -> str:
        """Plain-text summary shaped like a percentage-by-source table."""
        rows = []
        header = f"{'dataset':<12} {'n':>4} {'% equivalent':>13}"
        rows.append(header)
        rows.append("-" * len(header))
        for source, stats in sorted(self.per_source.items()):
            rows.append(
                f"{source:<12} {int(stats['count']):>4} {100.0 * stats['equivalent_fraction']:>12.1f}%"
            )
        rows.append("-" * len(header))
        rows.append(
            f"{'overall':<12} {len(self.results):>4} "
            f"{100.0 * self.overall_equivalent_fraction:>12.1f}%"
        )
        return "\n".join(rows)

    def to_csv(self) -> str:
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "source", "verdict", "forward", "backward", "contradiction"])
        for r in self.results:
            d = r.detail
            writer.writerow(
                [
                    r.id,
                    r.source,
                    r.verdict,
                    d.forward if d else "",
                    d.backward if d else "",
                    d.pred_contradiction if d else "",
                ]
            )
        return buf.getvalue()


def _aggregate(results: list[RecordResult]):
    counts = {v: 0 for v in VERDICT_ORDER}
    per_source: dict[str, dict[str, float]] = {}
    for r in results:
        counts[r.verdict] += 1
    for source in sorted({r.source for r in results}):
        rows = [r for r in results if r.source == source]
        eq = sum(1 for r in rows if r.verdict == "equivalent")
        per_source[source] = {
            "count": float(len(rows)),
            "equivalent_fraction": eq / len(rows) if rows else 0.0,
        }
    total = len(results)
    overall = (
        sum(1 for r in results if r.verdict == "equivalent") / total if total else 0.0
    )
    return counts, per_source, overall


def batch_evaluate(
    records: list[CorpusRecord],
    predictions: dict[str, str],
    cfg: SolverConfig,
    workers: int = 1,
    helpers: Optional[RuleSet] = None,
) -> BatchReport:
    """Grade each prediction against its record's ground truth.

    Unparseable or ill-formed predictions land in the `malformed` bucket
    and never abort the batch.  Results are ordered by record id, so the
    report is byte-identical for any worker count.
    """
    import time

    by_id = {r.id: r for r in records}
    for rid in predictions:
        if rid not in by_id:
            raise CorpusError(f"prediction for unknown record id {rid!r}")
    started = time.monotonic()
    items = sorted(predictions.items())

    def grade(item: tuple[str, str]) -> RecordResult:
        rid, text = item
        record = by_id[rid]
        try:
            pred = parse_theorem(text, strict=False)
            diags = well_formed(pred)
            if diags:
                raise ParseError("; ".join(str(d) for d in diags))
        except ParseError as e:
            return RecordResult(rid, record.source, MALFORMED, error=str(e))
        report = check_equivalence(
            record.statement, pred, cfg, helpers=helpers, query_prefix=rid
        )
        return RecordResult(rid, record.source, report.verdict, detail=report)

    if workers <= 1:
        results = [grade(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(grade, items))
    results.sort(key=lambda r: r.id)
    counts, per_source, overall = _aggregate(results)
    report = BatchReport(results, counts, per_source, overall, time.monotonic() - started)
    report.consistency_check()
    return report
