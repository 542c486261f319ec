"""Render sweep results to figures and a summary table next to the CSV."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import SummaryRow, SweepRow, summarize, write_summary_csv
from .integrator import true_amplitude


def _by_algorithm(summary: Sequence[SummaryRow]) -> dict[str, list[SummaryRow]]:
    groups: dict[str, list[SummaryRow]] = {}
    for s in summary:
        groups.setdefault(s.algorithm, []).append(s)
    return groups


def _plot_rel_error_vs_shots(summary: Sequence[SummaryRow], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for alg, group in _by_algorithm(summary).items():
        shots = [s.shots for s in group]
        ax.plot(shots, [s.mean_rel_error for s in group], "o-", label=f"{alg} mean")
        ax.plot(shots, [s.max_rel_error for s in group], "s--", label=f"{alg} max")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("shots")
    ax.set_ylabel("relative error of estimated amplitude")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _plot_rel_error_vs_oracle_calls(rows: Sequence[SweepRow], summary: Sequence[SummaryRow], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for alg, group in _by_algorithm(summary).items():
        alg_rows = [r for r in rows if r.algorithm == alg]
        ax.plot([r.oracle_calls for r in alg_rows], [r.rel_error for r in alg_rows],
                ".", alpha=0.25)
        ax.plot([s.mean_oracle_calls for s in group], [s.mean_rel_error for s in group],
                "o-", label=f"{alg} mean")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("oracle calls")
    ax.set_ylabel("relative error of estimated amplitude")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _plot_a_hat_vs_shots(rows: Sequence[SweepRow], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    domains = sorted({r.n for r in rows})
    for alg in sorted({r.algorithm for r in rows}):
        for n in domains:
            group = [r for r in rows if r.algorithm == alg and r.n == n]
            shots = sorted({r.shots for r in group})
            means = [np.mean([r.a_hat for r in group if r.shots == s]) for s in shots]
            stds = [np.std([r.a_hat for r in group if r.shots == s]) for s in shots]
            ax.errorbar(shots, means, yerr=stds, fmt="o-", capsize=3, label=f"{alg} n={n}")
    for n in domains:
        ax.axhline(true_amplitude(n), color="gray", linestyle=":", linewidth=1)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("shots")
    ax.set_ylabel("estimated amplitude")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(rows: Sequence[SweepRow], out_dir: str | Path, stem: str = "sweep") -> list[Path]:
    """Write summary CSV plus the error/oracle-call/amplitude figures.

    Returns the paths written, all under ``out_dir`` with names derived
    from ``stem``.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = summarize(rows)
    paths = [
        out_dir / f"{stem}_summary.csv",
        out_dir / f"{stem}_rel_error_vs_shots.png",
        out_dir / f"{stem}_rel_error_vs_oracle_calls.png",
        out_dir / f"{stem}_a_hat_vs_shots.png",
    ]
    write_summary_csv(summary, paths[0])
    _plot_rel_error_vs_shots(summary, paths[1])
    _plot_rel_error_vs_oracle_calls(rows, summary, paths[2])
    _plot_a_hat_vs_shots(rows, paths[3])
    return paths
