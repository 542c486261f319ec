"""Iterative amplitude estimation driven by confidence intervals.

Each round picks the largest usable Grover power k, measures Q^k A, and
converts an exact binomial confidence interval on the hit probability

    p = sin^2((2k+1) theta) = (1 - cos((4k+2) theta)) / 2

into bounds on theta, intersected with the bounds so far.  The conversion
is only invertible where cosine is monotonic, so a power k is usable only
when the scaled interval [(4k+2)*theta_l, (4k+2)*theta_u] fits entirely in
an upper ([0, pi] mod 2pi) or lower ([pi, 2pi] mod 2pi) half-plane.  The
loop stops once the induced interval on a = sin^2(theta) has half-width at
most epsilon.

Per-round intervals are Clopper-Pearson at level alpha_conf / max_rounds
(Bonferroni), so the final interval covers the true amplitude with
probability at least 1 - alpha_conf.  Rounds that repeat a power pool
their counts, which keeps the interval shrinking when no larger power
fits.  Power growth is capped at k_next <= 2*k_prev + 1 per round, so the
scaled factor 4k+2 roughly doubles at most; this bounds circuit depth the
same way the width guard (4k+2)*(theta_u - theta_l) <= pi does for wide
intervals, and keeps the selected powers small in practice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.stats import beta as _beta

from .oracle import OracleSpec
from .sampler import NOISELESS, NoiseSpec, ShotRecord, apply_noise, exact_probability, sample_shots, split_seed

_TWO_PI = 2.0 * math.pi
_TOL = 1e-12


@dataclass(frozen=True)
class IqaeConfig:
    epsilon: float = 0.01
    alpha_conf: float = 0.05
    shots_per_round: int = 1024
    max_rounds: int = 64

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon <= 0.5:
            raise ValueError("epsilon must lie in (0, 0.5]")
        if not 0.0 < self.alpha_conf < 1.0:
            raise ValueError("alpha_conf must lie in (0, 1)")
        if self.shots_per_round < 1:
            raise ValueError("need at least one shot per round")
        if self.max_rounds < 1:
            raise ValueError("need at least one round")


@dataclass(frozen=True)
class RoundLog:
    """One round: selected power, its record, and the interval after the round."""

    k: int
    upper_half: bool
    record: ShotRecord
    theta_lo: float
    theta_hi: float


@dataclass(frozen=True)
class IqaeResult:
    a_hat: float
    theta_hat: float
    a_lo: float
    a_hi: float
    theta_lo: float
    theta_hi: float
    oracle_calls: int
    rounds: tuple[RoundLog, ...]
    converged: bool

    @property
    def max_power(self) -> int:
        return max((r.k for r in self.rounds), default=0)


def _half_plane(scale: int, theta_l: float, theta_u: float) -> bool | None:
    """True/False if [scale*theta_l, scale*theta_u] fits the upper/lower
    half-plane of one period (no wrap), None otherwise."""
    width = scale * (theta_u - theta_l)
    if width > math.pi + _TOL:
        return None
    lo = (scale * theta_l) % _TWO_PI
    hi = lo + width
    if hi <= math.pi + _TOL:
        return True
    if lo >= math.pi - _TOL and hi <= _TWO_PI + _TOL:
        return False
    return None


def find_next_k(theta_l: float, theta_u: float, k_prev: int) -> tuple[int, bool]:
    """Largest usable power k >= k_prev for the current theta interval.

    Scans downward from the cap min(2*k_prev + 1, width guard) and returns
    the first k whose scaled interval fits one half-plane, together with
    which half-plane (True = upper).  Falls back to k_prev - resolving its
    half-plane by the interval midpoint if even k_prev no longer fits.
    """
    if not 0.0 <= theta_l <= theta_u <= math.pi / 2 + _TOL:
        raise ValueError(f"invalid theta interval [{theta_l}, {theta_u}]")
    if k_prev < 0:
        raise ValueError("previous power must be non-negative")

    k_cap = 2 * k_prev + 1
    width = theta_u - theta_l
    if width > 0:
        k_cap = min(k_cap, math.floor((math.pi / width - 2.0) / 4.0 + _TOL))
    for k in range(k_cap, k_prev, -1):
        plane = _half_plane(4 * k + 2, theta_l, theta_u)
        if plane is not None:
            return k, plane
    plane = _half_plane(4 * k_prev + 2, theta_l, theta_u)
    if plane is not None:
        return k_prev, plane
    midpoint = ((4 * k_prev + 2) * (theta_l + theta_u) / 2.0) % _TWO_PI
    return k_prev, midpoint <= math.pi


def confidence_interval(record: ShotRecord, alpha_round: float) -> tuple[float, float]:
    """Clopper-Pearson exact binomial interval on the hit probability."""
    if not 0.0 < alpha_round < 1.0:
        raise ValueError("alpha_round must lie in (0, 1)")
    h, n = record.hits, record.shots
    lo = float(_beta.ppf(alpha_round / 2.0, h, n - h + 1)) if h > 0 else 0.0
    hi = float(_beta.ppf(1.0 - alpha_round / 2.0, h + 1, n - h)) if h < n else 1.0
    return lo, hi


def _theta_bounds_from_probability(
    p_lo: float, p_hi: float, k: int, upper_half: bool, theta_l: float
) -> tuple[float, float]:
    """Invert p = (1 - cos((4k+2) theta)) / 2 on the identified half-plane."""
    scale = 4 * k + 2
    period = math.floor(scale * theta_l / _TWO_PI + 1e-9)
    if upper_half:
        phi_lo = math.acos(1.0 - 2.0 * p_lo)
        phi_hi = math.acos(1.0 - 2.0 * p_hi)
    else:
        phi_lo = _TWO_PI - math.acos(1.0 - 2.0 * p_hi)
        phi_hi = _TWO_PI - math.acos(1.0 - 2.0 * p_lo)
    return (_TWO_PI * period + phi_lo) / scale, (_TWO_PI * period + phi_hi) / scale


def estimate(
    spec: OracleSpec,
    cfg: IqaeConfig = IqaeConfig(),
    noise: NoiseSpec = NOISELESS,
    seed: int = 0,
) -> IqaeResult:
    """Run rounds until the amplitude interval is at most 2*epsilon wide."""
    theta_l, theta_u = 0.0, math.pi / 2
    k = 0
    alpha_round = cfg.alpha_conf / cfg.max_rounds
    pooled: dict[int, tuple[int, int]] = {}  # k -> cumulative (hits, shots)
    rounds: list[RoundLog] = []
    oracle_calls = 0
    converged = False

    for round_idx in range(cfg.max_rounds):
        k, upper_half = find_next_k(theta_l, theta_u, k)
        p = apply_noise(exact_probability(spec, k), k, noise)
        record = sample_shots(p, cfg.shots_per_round, split_seed(seed, round_idx), k=k)
        oracle_calls += cfg.shots_per_round * (2 * k + 1)

        hits, shots = pooled.get(k, (0, 0))
        pooled[k] = (hits + record.hits, shots + record.shots)
        pooled_record = ShotRecord(k=k, shots=pooled[k][1], hits=pooled[k][0])
        p_lo, p_hi = confidence_interval(pooled_record, alpha_round)

        lo_new, hi_new = _theta_bounds_from_probability(p_lo, p_hi, k, upper_half, theta_l)
        theta_l = max(theta_l, lo_new)
        theta_u = min(theta_u, hi_new)
        if theta_l > theta_u:  # numerically empty intersection; collapse
            theta_l = theta_u = (theta_l + theta_u) / 2.0

        rounds.append(RoundLog(k, upper_half, record, theta_l, theta_u))
        if math.sin(theta_u) ** 2 - math.sin(theta_l) ** 2 <= 2.0 * cfg.epsilon:
            converged = True
            break

    theta_hat = (theta_l + theta_u) / 2.0
    return IqaeResult(
        a_hat=math.sin(theta_hat) ** 2,
        theta_hat=theta_hat,
        a_lo=math.sin(theta_l) ** 2,
        a_hi=math.sin(theta_u) ** 2,
        theta_lo=theta_l,
        theta_hi=theta_u,
        oracle_calls=oracle_calls,
        rounds=tuple(rounds),
        converged=converged,
    )
