"""Amplitude estimation toolkit: exact statevector simulation of the
Grover-amplified integration oracle, MLQAE and IQAE estimators, classical
Riemann references, and an experiment harness."""

from .integrator import (
    IntegralSpec,
    amplitude_to_integral,
    exact_reference,
    relative_error,
    riemann_sum,
    true_amplitude,
)
from .iqae import IqaeConfig, IqaeResult
from .mlqae import MlqaeConfig, MlqaeResult, eis_schedule
from .oracle import GroverOperator, OracleSpec, build_a, build_a_inverse, build_q, theta_from_amplitude
from .sampler import NOISELESS, NoiseSpec, ShotRecord, apply_noise, exact_probability, sample_shots
from .statevector import Circuit, Gate, StateVector, apply_gate, prob_ancilla_one, run_circuit, zero_state

__all__ = [
    "Circuit",
    "Gate",
    "GroverOperator",
    "IntegralSpec",
    "IqaeConfig",
    "IqaeResult",
    "MlqaeConfig",
    "MlqaeResult",
    "NOISELESS",
    "NoiseSpec",
    "OracleSpec",
    "ShotRecord",
    "StateVector",
    "amplitude_to_integral",
    "apply_gate",
    "apply_noise",
    "build_a",
    "build_a_inverse",
    "build_q",
    "eis_schedule",
    "exact_probability",
    "exact_reference",
    "prob_ancilla_one",
    "relative_error",
    "riemann_sum",
    "run_circuit",
    "sample_shots",
    "theta_from_amplitude",
    "true_amplitude",
    "zero_state",
]

__version__ = "0.1.0"
