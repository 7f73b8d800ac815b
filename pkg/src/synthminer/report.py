"""Report output: JSON, per-iteration CSV and rendered figures.

The CSV carries one row per added activity with everything needed to
regenerate the ratio/time curves from the artifact output alone; the
figure renderer draws exactly those curves.
"""

from __future__ import annotations

import csv
import json
import os
from fractions import Fraction

CSV_COLUMNS = [
    "i",
    "activity",
    "v_size",
    "net_nodes",
    "ratio",
    "provenance",
    "candidates",
    "pattern",
    "fitness",
    "precision",
    "f1",
    "millis",
]


def report_json(report):
    return json.dumps(report.to_json(), indent=2) + "\n"


def write_report_json(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report_json(report))


def write_iterations_csv(report, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in report.records:
            writer.writerow([
                rec.index,
                rec.activity,
                rec.v_size,
                rec.net_nodes,
                str(rec.ratio),
                rec.provenance,
                rec.candidate_count,
                rec.pattern,
                f"{rec.fitness:.6f}",
                f"{rec.precision:.6f}",
                f"{rec.f1:.6f}",
                f"{rec.millis:.3f}",
            ])


def render_figures(report, directory):
    """Write the search-space-ratio, per-step-time and quality curves as
    PNG files; returns the list of written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(directory, exist_ok=True)
    iterations = [rec.index for rec in report.records]
    written = []

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(iterations, [float(Fraction(rec.ratio)) for rec in report.records],
            marker="o", color="tab:blue")
    ax.set_xlabel("iteration")
    ax.set_ylabel("reduced search-space ratio")
    ax.set_ylim(0, 1.05)
    ax.set_title(f"Search-space reduction ({report.strategy})")
    ax.grid(True, alpha=0.3)
    path = os.path.join(directory, "search_space_ratio.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(iterations, [rec.millis for rec in report.records],
            marker="o", color="tab:orange")
    ax.set_xlabel("iteration")
    ax.set_ylabel("time to add activity [ms]")
    ax.set_title(f"Per-step computation time ({report.strategy})")
    ax.grid(True, alpha=0.3)
    path = os.path.join(directory, "time_per_iteration.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(iterations, [rec.fitness for rec in report.records], marker="o", label="fitness")
    ax.plot(iterations, [rec.precision for rec in report.records], marker="s", label="precision")
    ax.plot(iterations, [rec.f1 for rec in report.records], marker="^", label="F1")
    ax.set_xlabel("iteration")
    ax.set_ylabel("score on projected log")
    ax.set_ylim(0, 1.05)
    ax.set_title(f"Model quality per iteration ({report.strategy})")
    ax.legend()
    ax.grid(True, alpha=0.3)
    path = os.path.join(directory, "quality.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    return written
