"""Maximum likelihood amplitude estimation.

Runs the exponential circuit family A, QA, Q^2 A, ..., Q^(2^(m-1)) A, and
combines the per-circuit hit counts through the joint likelihood

    L(theta) = prod_k sin^2((2 m_k + 1) theta)^h_k
                      * cos^2((2 m_k + 1) theta)^(N_k - h_k)

maximized over theta in [0, pi/2] in log form (same argmax, no underflow).
The likelihood is highly oscillatory for large powers, so the maximizer is
a dense grid scan followed by derivative-free golden-section refinement
around the best grid point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .oracle import OracleSpec
from .sampler import NOISELESS, NoiseSpec, ShotRecord, apply_noise, exact_probability, sample_shots, split_seed

# Floor for sin^2/cos^2 before the log; keeps the argmax while avoiding -inf
# at the exact endpoints (where 0*log(0) must still contribute 0).
_LOG_FLOOR = 1e-300

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MlqaeConfig:
    m: int = 3
    shots_per_circuit: int = 1024
    grid_points: int = 10_000
    refine_iters: int = 60

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("schedule depth must be non-negative")
        if self.shots_per_circuit < 1:
            raise ValueError("need at least one shot per circuit")
        if self.grid_points < 16:
            raise ValueError("grid too coarse to bracket the maximizer")
        if self.refine_iters < 0:
            raise ValueError("refinement iterations must be non-negative")


@dataclass(frozen=True)
class MlqaeResult:
    theta_hat: float
    a_hat: float
    oracle_calls: int
    records: tuple[ShotRecord, ...]


def eis_schedule(m: int) -> list[int]:
    """Grover powers [0, 1, 2, 4, ..., 2^(m-1)]: doubling from the second on."""
    if m < 0:
        raise ValueError("schedule depth must be non-negative")
    return [0] + [2**k for k in range(m)]


def _log_likelihood_terms(records: Sequence[ShotRecord], thetas: np.ndarray) -> np.ndarray:
    out = np.zeros_like(thetas, dtype=float)
    for rec in records:
        scaled = (2 * rec.k + 1) * thetas
        s2 = np.clip(np.sin(scaled) ** 2, _LOG_FLOOR, 1.0)
        c2 = np.clip(np.cos(scaled) ** 2, _LOG_FLOOR, 1.0)
        out += rec.hits * np.log(s2) + (rec.shots - rec.hits) * np.log(c2)
    return out


def log_likelihood(records: Sequence[ShotRecord], theta: float) -> float:
    """Joint log-likelihood of the records at theta in [0, pi/2]."""
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta {theta} outside [0, pi/2]")
    return float(_log_likelihood_terms(records, np.asarray([theta]))[0])


def maximize_likelihood(
    records: Sequence[ShotRecord], grid_points: int = 10_000, refine_iters: int = 60
) -> float:
    """Argmax of the joint log-likelihood over [0, pi/2]."""
    grid = np.linspace(0.0, math.pi / 2, grid_points)
    values = _log_likelihood_terms(records, grid)
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid_points - 1)]

    def f(t: float) -> float:
        return float(_log_likelihood_terms(records, np.asarray([t]))[0])

    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(refine_iters):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
    return (lo + hi) / 2.0


def oracle_call_count(powers: Sequence[int], shots: int) -> int:
    """Total A/A^-1 applications: each Q^k A circuit costs 2k+1 per shot."""
    return shots * sum(2 * k + 1 for k in powers)


def estimate(
    spec: OracleSpec,
    cfg: MlqaeConfig,
    noise: NoiseSpec = NOISELESS,
    seed: int = 0,
) -> MlqaeResult:
    """Sample every circuit in the schedule and return the likelihood maximizer."""
    powers = eis_schedule(cfg.m)
    records = []
    for idx, k in enumerate(powers):
        p = apply_noise(exact_probability(spec, k), k, noise)
        records.append(sample_shots(p, cfg.shots_per_circuit, split_seed(seed, idx), k=k))
    theta_hat = maximize_likelihood(records, cfg.grid_points, cfg.refine_iters)
    return MlqaeResult(
        theta_hat=theta_hat,
        a_hat=math.sin(theta_hat) ** 2,
        oracle_calls=oracle_call_count(powers, cfg.shots_per_circuit),
        records=tuple(records),
    )
