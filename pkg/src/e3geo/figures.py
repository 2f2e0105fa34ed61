"""Matplotlib renderings of batch and approximate-equivalence reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .corpus import VERDICT_ORDER, BatchReport
from .equiv import ApproxReport

_VERDICT_COLORS = {
    "equivalent": "#2a9d4e",
    "forward_only": "#7fbf7f",
    "backward_only": "#cbe5a8",
    "neither": "#e8b84b",
    "pred_unsat": "#d1495b",
    "malformed": "#8d8d8d",
}


def render_batch_figure(report: BatchReport, path: str | Path) -> Path:
    """Two panels: verdict counts, and percent-equivalent per source."""
    path = Path(path)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

    labels = [v for v in VERDICT_ORDER if report.counts.get(v)]
    values = [report.counts[v] for v in labels]
    ax1.bar(labels, values, color=[_VERDICT_COLORS[v] for v in labels])
    ax1.set_title("verdicts")
    ax1.set_ylabel("records")
    ax1.tick_params(axis="x", rotation=30)

    sources = sorted(report.per_source)
    fracs = [100.0 * report.per_source[s]["equivalent_fraction"] for s in sources]
    ax2.bar(sources, fracs, color="#4472c4")
    ax2.set_title("% proved equivalent")
    ax2.set_ylim(0, 100)
    ax2.set_ylabel("%")
    for i, f in enumerate(fracs):
        ax2.annotate(f"{f:.0f}%", (i, f), ha="center", va="bottom")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_approx_figure(report: ApproxReport, path: str | Path) -> Path:
    """Proved vs total clause obligations per step for the best unification."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 4))
    if report.eligible and report.outcomes:
        best = max(report.outcomes, key=lambda o: o.solved_ratio)
        steps = [f"step {i + 1}" for i in range(len(best.steps))]
        totals = [s.total for s in best.steps]
        proved = [s.proved for s in best.steps]
        ax.bar(steps, totals, color="#d9d9d9", label="obligations")
        ax.bar(steps, proved, color="#2a9d4e", label="proved")
        ax.set_title(
            f"approximate equivalence: best ratio {best.solved_ratio:.2f} "
            f"(unification score {best.unification.score:.2f})"
        )
        ax.legend()
        ax.set_ylabel("clauses")
    else:
        ax.text(0.5, 0.5, f"not eligible:\n{report.reason}", ha="center", va="center")
        ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
