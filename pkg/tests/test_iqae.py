import math

import numpy as np
import pytest

from conftest import sin2_mean
from qaemc.iqae import (
    IqaeConfig,
    confidence_interval,
    estimate,
    find_next_k,
)
from qaemc.sampler import ShotRecord

TWO_PI = 2 * math.pi


def brute_force_next_k(theta_l, theta_u, k_prev):
    """Exhaustive reference: checks every candidate power by explicitly
    locating the scaled interval inside a period, no modular shortcuts."""
    best = None
    for k in range(k_prev, min(2 * k_prev + 1, 1000) + 1):
        scale = 4 * k + 2
        lo, hi = scale * theta_l, scale * theta_u
        period = math.floor(lo / TWO_PI)
        if TWO_PI * period <= lo and hi <= TWO_PI * period + math.pi:
            best = (k, True)
        elif TWO_PI * period + math.pi <= lo and hi <= TWO_PI * (period + 1):
            best = (k, False)
    if best is not None:
        return best
    midpoint = (4 * k_prev + 2) * (theta_l + theta_u) / 2 % TWO_PI
    return k_prev, midpoint <= math.pi


def test_initial_interval_keeps_power_zero():
    assert find_next_k(0.0, math.pi / 2, 0) == (0, True)


def test_first_growth_step_matches_brute_force():
    assert find_next_k(0.40, 0.48, 0) == brute_force_next_k(0.40, 0.48, 0)
    k, upper = find_next_k(0.40, 0.48, 0)
    assert k == 1 and upper is True  # 6*[0.40, 0.48] sits inside [0, pi]


def test_degenerate_interval_grows_to_doubling_cap():
    assert find_next_k(0.3, 0.3, 0)[0] == 1
    assert find_next_k(0.3, 0.3, 5)[0] == 11
    k, _ = find_next_k(0.3, 0.3, 11)
    assert k == 23


def test_find_next_k_matches_brute_force_on_random_intervals():
    rng = np.random.default_rng(271828)
    for _ in range(2000):
        lo = rng.uniform(0, math.pi / 2)
        width = (math.pi / 2 - lo) * rng.uniform(0, 1) ** 3
        k_prev = int(rng.integers(0, 300))
        assert find_next_k(lo, lo + width, k_prev) == brute_force_next_k(lo, lo + width, k_prev)


def test_find_next_k_never_decreases_power():
    rng = np.random.default_rng(5)
    for _ in range(200):
        lo = rng.uniform(0, 1.4)
        hi = lo + rng.uniform(0, 0.1)
        k_prev = int(rng.integers(0, 50))
        assert find_next_k(lo, min(hi, math.pi / 2), k_prev)[0] >= k_prev


def test_find_next_k_validation():
    with pytest.raises(ValueError):
        find_next_k(0.5, 0.4, 0)
    with pytest.raises(ValueError):
        find_next_k(0.1, 0.2, -1)


def test_confidence_interval_zero_hits_closed_form():
    lo, hi = confidence_interval(ShotRecord(k=0, shots=100, hits=0), 0.05)
    assert lo == 0.0
    assert hi == pytest.approx(1 - 0.025 ** (1 / 100), abs=1e-9)  # about 0.0362


def test_confidence_interval_all_hits_mirror():
    lo, hi = confidence_interval(ShotRecord(k=0, shots=100, hits=100), 0.05)
    assert hi == 1.0
    assert lo == pytest.approx(0.025 ** (1 / 100), abs=1e-9)


def test_confidence_interval_contains_point_estimate():
    rng = np.random.default_rng(12)
    for _ in range(100):
        shots = int(rng.integers(2, 2000))
        hits = int(rng.integers(0, shots + 1))
        lo, hi = confidence_interval(ShotRecord(k=0, shots=shots, hits=hits), 0.05)
        assert lo <= hits / shots <= hi


def test_confidence_interval_width_scales_like_normal_approximation():
    shots = 4096
    lo, hi = confidence_interval(ShotRecord(k=0, shots=shots, hits=shots // 2), 0.05)
    normal_width = 2 * 1.959964 * math.sqrt(0.25 / shots)
    assert abs((hi - lo) / normal_width - 1) < 0.20


def test_confidence_interval_validation():
    with pytest.raises(ValueError):
        confidence_interval(ShotRecord(k=0, shots=10, hits=5), 0.0)


def test_loose_tolerance_terminates_after_one_round(spec_n2):
    res = estimate(spec_n2, IqaeConfig(epsilon=0.5), seed=3)
    assert res.converged
    assert len(res.rounds) == 1
    assert res.rounds[0].k == 0
    assert res.oracle_calls == res.rounds[0].record.shots


def test_round_intervals_nest_and_powers_grow(spec_n2):
    for seed in range(10):
        res = estimate(spec_n2, IqaeConfig(epsilon=0.005), seed=seed)
        widths = [r.theta_hi - r.theta_lo for r in res.rounds]
        assert all(b <= a + 1e-15 for a, b in zip(widths, widths[1:]))
        lows = [r.theta_lo for r in res.rounds]
        highs = [r.theta_hi for r in res.rounds]
        assert all(b >= a - 1e-15 for a, b in zip(lows, lows[1:]))
        assert all(b <= a + 1e-15 for a, b in zip(highs, highs[1:]))
        powers = [r.k for r in res.rounds]
        assert all(b >= a for a, b in zip(powers, powers[1:]))


def test_oracle_accounting_matches_round_log(spec_n2):
    res = estimate(spec_n2, IqaeConfig(), seed=8)
    recomputed = sum(r.record.shots * (2 * r.k + 1) for r in res.rounds)
    assert res.oracle_calls == recomputed
    assert res.oracle_calls >= res.rounds[0].record.shots


def test_result_interval_brackets_estimate(spec_n2):
    res = estimate(spec_n2, IqaeConfig(), seed=21)
    assert 0.0 <= res.a_lo <= res.a_hat <= res.a_hi <= 1.0
    assert res.a_hat == pytest.approx(math.sin(res.theta_hat) ** 2, abs=1e-12)


def test_typical_runs_use_small_powers(spec_n2):
    max_powers = [estimate(spec_n2, IqaeConfig(), seed=s).max_power for s in range(20)]
    assert max(max_powers) <= 4
    assert np.median(max_powers) <= 2


def test_estimate_deterministic_per_seed(spec_n2):
    assert estimate(spec_n2, IqaeConfig(), seed=4) == estimate(spec_n2, IqaeConfig(), seed=4)


def test_unconverged_run_is_flagged(spec_n2):
    res = estimate(spec_n2, IqaeConfig(epsilon=0.001, shots_per_round=16, max_rounds=2), seed=0)
    assert not res.converged
    assert len(res.rounds) == 2
    assert res.a_lo <= res.a_hi


def test_coverage_over_many_seeds(spec_n2):
    # nominal 95%; allow 3 sigma of binomial slack over the 500 runs
    truth = sin2_mean(2)
    cfg = IqaeConfig(epsilon=0.01, alpha_conf=0.05)
    hits = 0
    for seed in range(500):
        res = estimate(spec_n2, cfg, seed=seed)
        assert res.converged
        hits += res.a_lo - 1e-12 <= truth <= res.a_hi + 1e-12
    slack = 3 * math.sqrt(0.05 * 0.95 / 500)
    assert hits / 500 >= 0.95 - slack


def test_config_validation():
    with pytest.raises(ValueError):
        IqaeConfig(epsilon=0.0)
    with pytest.raises(ValueError):
        IqaeConfig(epsilon=0.6)
    with pytest.raises(ValueError):
        IqaeConfig(alpha_conf=1.0)
    with pytest.raises(ValueError):
        IqaeConfig(shots_per_round=0)
    with pytest.raises(ValueError):
        IqaeConfig(max_rounds=0)
