"""Finite-shot measurement of amplified circuits, with an optional noise proxy.

Only the ancilla is ever read out, so shots are drawn from its exact
marginal probability instead of sampling full bitstrings; the statistics
are identical and the cost is one binomial draw.  Randomness comes from
counter-based Philox streams keyed by an integer seed; disjoint substreams
for trials/rounds are derived by XOR-ing the seed with an index, which is
sound for counter-based keys.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oracle import OracleSpec, build_a, build_q
from .statevector import StateVector, prob_ancilla_one, run_circuit


@dataclass(frozen=True)
class ShotRecord:
    """Measurement tuple of one circuit: Grover power k, shots, ancilla-1 hits."""

    k: int
    shots: int
    hits: int

    def __post_init__(self) -> None:
        if self.k < 0 or self.shots < 1 or not 0 <= self.hits <= self.shots:
            raise ValueError(f"inconsistent shot record {self}")


@dataclass(frozen=True)
class NoiseSpec:
    """Depolarizing proxy per Grover application plus a readout bit flip."""

    p_depol: float = 0.0
    p_readout: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_depol <= 1.0 or not 0.0 <= self.p_readout <= 1.0:
            raise ValueError("noise probabilities must lie in [0, 1]")

    @property
    def is_noiseless(self) -> bool:
        return self.p_depol == 0.0 and self.p_readout == 0.0


NOISELESS = NoiseSpec()


# Memoized Q^k A |0> states per spec; purely an optimization, entries are
# never mutated (every statevector operation copies).
_STATE_CACHE: dict[tuple[OracleSpec, int], StateVector] = {}


def _amplified_state(spec: OracleSpec, k: int) -> StateVector:
    cached = _STATE_CACHE.get((spec, k))
    if cached is not None:
        return cached
    start = k
    while start > 0 and (spec, start - 1) not in _STATE_CACHE:
        start -= 1
    if start == 0:
        state = run_circuit(build_a(spec))
        _STATE_CACHE[(spec, 0)] = state
        start = 1
    else:
        state = _STATE_CACHE[(spec, start - 1)]
    if start <= k:
        grover = build_q(spec).circuit
        for power in range(start, k + 1):
            state = run_circuit(grover, state)
            _STATE_CACHE[(spec, power)] = state
    return state


def exact_probability(spec: OracleSpec, k: int) -> float:
    """Ancilla-1 probability of Q^k A |0>, by full statevector simulation."""
    if k < 0:
        raise ValueError("Grover power must be non-negative")
    return prob_ancilla_one(_amplified_state(spec, k))


def apply_noise(p: float, k: int, noise: NoiseSpec) -> float:
    """Degrade an exact probability for a circuit of depth 2k+1 oracle calls.

    Depolarizing contracts p toward 1/2 with weight (1-p_depol)^(2k+1),
    then the readout flip mixes in the complementary outcome.
    """
    lam = (1.0 - noise.p_depol) ** (2 * k + 1)
    p = lam * p + (1.0 - lam) / 2.0
    return p * (1.0 - noise.p_readout) + (1.0 - p) * noise.p_readout


def split_seed(seed: int, index: int) -> int:
    """Disjoint substream seed for trial/round `index` (Philox keyspace XOR)."""
    return seed ^ index


def sample_shots(p: float, shots: int, rng_seed: int, k: int = 0) -> ShotRecord:
    """Binomial(shots, p) hit count, deterministic per seed."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    if shots < 1:
        raise ValueError("need at least one shot")
    rng = np.random.Generator(np.random.Philox(key=rng_seed))
    hits = int(rng.binomial(shots, p))
    return ShotRecord(k=k, shots=shots, hits=hits)
