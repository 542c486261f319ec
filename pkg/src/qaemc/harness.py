"""Experiment sweeps: shot ranges x repeated trials, with CSV output.

Every (shots, trial) cell runs one fresh estimate with a seed derived
deterministically from (master seed, algorithm, n, shots, trial), so rows
are reproducible, order-independent, and safe to compute in parallel.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import iqae, mlqae
from .integrator import relative_error, true_amplitude
from .oracle import OracleSpec
from .sampler import NOISELESS, NoiseSpec

CSV_HEADER = "algorithm,n,shots,trial,a_hat,rel_error,oracle_calls,converged,seed"

_ALGORITHMS = ("mlqae", "iqae")


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str
    n: int
    shots_list: tuple[int, ...]
    trials: int = 30
    m: int = 3
    epsilon: float = 0.01
    alpha_conf: float = 0.05
    noise: NoiseSpec = NOISELESS
    seed: int = 0
    workers: int = 1
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"algorithm must be one of {_ALGORITHMS}")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not self.shots_list or any(s < 1 for s in self.shots_list):
            raise ValueError("shot counts must be positive")
        if self.workers < 1:
            raise ValueError("need at least one worker")


@dataclass(frozen=True)
class SweepRow:
    algorithm: str
    n: int
    shots: int
    trial: int
    a_hat: float
    rel_error: float
    oracle_calls: int
    converged: bool
    seed: int


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    n: int
    shots: int
    trials: int
    mean_rel_error: float
    max_rel_error: float
    mean_oracle_calls: float


def row_seed(master_seed: int, algorithm: str, n: int, shots: int, trial: int) -> int:
    """Well-mixed per-row seed; depends only on the row coordinates."""
    entropy = [master_seed, _ALGORITHMS.index(algorithm), n, shots, trial]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


def _run_cell(cfg: ExperimentConfig, shots: int, trial: int) -> SweepRow:
    seed = row_seed(cfg.seed, cfg.algorithm, cfg.n, shots, trial)
    spec = OracleSpec(n=cfg.n, b=math.pi / 4, alpha=0.5)
    truth = true_amplitude(cfg.n)
    try:
        if cfg.algorithm == "mlqae":
            res = mlqae.estimate(
                spec, mlqae.MlqaeConfig(m=cfg.m, shots_per_circuit=shots), cfg.noise, seed
            )
            a_hat, calls, converged = res.a_hat, res.oracle_calls, True
        else:
            res = iqae.estimate(
                spec,
                iqae.IqaeConfig(
                    epsilon=cfg.epsilon, alpha_conf=cfg.alpha_conf, shots_per_round=shots
                ),
                cfg.noise,
                seed,
            )
            a_hat, calls, converged = res.a_hat, res.oracle_calls, res.converged
        rel = relative_error(a_hat, truth)
    except ValueError:
        a_hat, rel, calls, converged = math.nan, math.nan, 0, False
    return SweepRow(cfg.algorithm, cfg.n, shots, trial, a_hat, rel, calls, converged, seed)


def run_sweep(cfg: ExperimentConfig) -> list[SweepRow]:
    """All (shots, trial) cells, sorted deterministically."""
    cells = [(shots, trial) for shots in cfg.shots_list for trial in range(cfg.trials)]
    if cfg.workers == 1:
        rows = [_run_cell(cfg, shots, trial) for shots, trial in cells]
    else:
        serial_cfg = replace(cfg, workers=1)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_run_cell, [serial_cfg] * len(cells), *zip(*cells), chunksize=8))
    rows.sort(key=lambda r: (r.algorithm, r.n, r.shots, r.trial))
    return rows


def summarize(rows: Sequence[SweepRow]) -> list[SummaryRow]:
    """Mean/max relative error and mean oracle calls per (algorithm, n, shots)."""
    if not rows:
        raise ValueError("nothing to summarize")
    groups: dict[tuple[str, int, int], list[SweepRow]] = {}
    for row in rows:
        groups.setdefault((row.algorithm, row.n, row.shots), []).append(row)
    out = []
    for (algorithm, n, shots), members in sorted(groups.items()):
        errors = [r.rel_error for r in members]
        out.append(
            SummaryRow(
                algorithm=algorithm,
                n=n,
                shots=shots,
                trials=len(members),
                mean_rel_error=float(np.mean(errors)),
                max_rel_error=float(np.max(errors)),
                mean_oracle_calls=float(np.mean([r.oracle_calls for r in members])),
            )
        )
    return out


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_lines(lines: list[str], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def write_csv(rows: Iterable[SweepRow], path: str | Path) -> None:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.algorithm},{r.n},{r.shots},{r.trial},{_fmt(r.a_hat)},{_fmt(r.rel_error)},"
            f"{r.oracle_calls},{'true' if r.converged else 'false'},{r.seed}"
        )
    _write_lines(lines, path)


def read_csv(path: str | Path) -> list[SweepRow]:
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path} is not a sweep CSV (bad header)")
    rows = []
    for line in lines[1:]:
        alg, n, shots, trial, a_hat, rel, calls, conv, seed = line.split(",")
        rows.append(
            SweepRow(alg, int(n), int(shots), int(trial), float(a_hat), float(rel),
                     int(calls), conv == "true", int(seed))
        )
    return rows


def write_summary_csv(summary: Sequence[SummaryRow], path: str | Path) -> None:
    lines = ["algorithm,n,shots,trials,mean_rel_error,max_rel_error,mean_oracle_calls"]
    for s in summary:
        lines.append(
            f"{s.algorithm},{s.n},{s.shots},{s.trials},{_fmt(s.mean_rel_error)},"
            f"{_fmt(s.max_rel_error)},{_fmt(s.mean_oracle_calls)}"
        )
    _write_lines(lines, path)
