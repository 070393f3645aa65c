"""File reports: delimited stage summary plus matplotlib figures.

The `report` subcommand writes, into an output directory: the structured
pipeline report (JSON), a CSV of stage timings, a scatter of the Parikh-image
membership in the style of lattice-point diagrams, a growth curve of accepted
words per length when the closure is regular, and the DFA in DOT form.
Automaton diagrams themselves stay in DOT for external renderers.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from . import automata, semilinear  # noqa: E402
from .pipeline import REGULAR, PipelineReport  # noqa: E402


def _membership_grid(s, radius):
    return {sigma: semilinear.member(sigma, s)
            for sigma in semilinear.box(s.dim, radius)}


def plot_parikh_set(report: PipelineReport, path: Path, radius: int = 12):
    """Lattice scatter of the commutative image, one panel per coordinate
    pair (a single number line for one-letter alphabets)."""
    s = report.semilinear_set
    k = s.dim
    if k == 0:
        return False
    grid = _membership_grid(s, radius)
    if k == 1:
        fig, ax = plt.subplots(figsize=(6, 1.6))
        xs = [v[0] for v, inside in grid.items() if inside]
        ax.plot(xs, [0] * len(xs), "o", color="tab:blue", ms=5)
        ax.set_yticks([])
        ax.set_xlim(-0.5, radius + 0.5)
        ax.set_xlabel("count of %r" % report.alphabet[0])
    else:
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        fig, axes = plt.subplots(1, len(pairs),
                                 figsize=(4.2 * len(pairs), 4.2),
                                 squeeze=False)
        for ax, (i, j) in zip(axes[0], pairs):
            pts = sorted({(v[i], v[j]) for v, inside in grid.items()
                          if inside})
            if pts:
                ax.plot([p[0] for p in pts], [p[1] for p in pts], "o",
                        color="tab:blue", ms=4)
            ax.set_xlim(-0.5, radius + 0.5)
            ax.set_ylim(-0.5, radius + 0.5)
            ax.set_xlabel("count of %r" % report.alphabet[i])
            ax.set_ylabel("count of %r" % report.alphabet[j])
            ax.grid(True, lw=0.3)
            ax.set_aspect("equal")
    fig.suptitle("Parikh image of %s" % report.regex)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return True


def plot_growth(report: PipelineReport, path: Path, max_len: int = 12):
    """Accepted words per length against the total word count."""
    if report.dfa_min is None:
        return False
    counts = automata.word_count_by_length(report.dfa_min, max_len)
    k = max(1, len(report.alphabet))
    total = [k ** n for n in range(max_len + 1)]
    fig, ax = plt.subplots(figsize=(6, 4))
    lengths = list(range(max_len + 1))
    ax.bar(lengths, counts, color="tab:blue", label="closure words")
    ax.plot(lengths, total, "k--", lw=1, label="all words")
    ax.set_xlabel("word length")
    ax.set_ylabel("count")
    ax.set_yscale("symlog")
    ax.legend()
    ax.set_title("Accepted words per length for %s" % report.regex)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return True


def write_report(report: PipelineReport, outdir, *, radius: int = 12,
                 growth_len: int = 12) -> list[Path]:
    """Write report.json, stages.csv, figures, and the DOT export."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    json_path = outdir / "report.json"
    json_path.write_text(json.dumps(report.to_json_obj(), indent=1) + "\n")
    written.append(json_path)

    csv_path = outdir / "stages.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["stage", "seconds", "detail"])
        detail = {
            "semilinear": lambda: "%d terms" % len(
                report.semilinear_set.terms),
            "redisambiguate": lambda: "%d terms" % len(
                report.consistent_set.terms),
            "simplify": lambda: report.verdict or "",
            "automaton": lambda: "%d states" % report.dfa_raw.n_states,
            "minimize": lambda: "%d states" % report.dfa_min.n_states,
        }
        for name, sec in report.timings:
            extra = detail[name]() if name in detail else ""
            writer.writerow([name, "%.6f" % sec, extra])
    written.append(csv_path)

    set_path = outdir / "parikh_set.png"
    if report.semilinear_set is not None and plot_parikh_set(
            report, set_path, radius):
        written.append(set_path)

    if report.verdict == REGULAR and report.dfa_min is not None:
        growth_path = outdir / "growth.png"
        if plot_growth(report, growth_path, growth_len):
            written.append(growth_path)
        dot_path = outdir / "dfa.dot"
        dot_path.write_text(automata.export_dot(report.dfa_min))
        written.append(dot_path)

    return written
