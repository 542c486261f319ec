"""Classical Riemann-sum references and error metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

# Closed forms for the built-in integrand sin^2 on [0, pi/4]:
# integral = pi/8 - 1/4, mean value over the interval = 1/2 - 1/pi.
SIN2_INTERVAL = (0.0, math.pi / 4)
SIN2_EXACT_INTEGRAL = math.pi / 8 - 0.25
SIN2_EXACT_AMPLITUDE = 0.5 - 1.0 / math.pi

_EXACT_REFERENCES = {
    "sin2": SIN2_EXACT_INTEGRAL,
    "sin2_amplitude": SIN2_EXACT_AMPLITUDE,
}


def _sin2(xs: np.ndarray) -> np.ndarray:
    return np.sin(xs) ** 2


@dataclass(frozen=True)
class IntegralSpec:
    """Finite Riemann sum: f over [a_lo, b_hi], n_sub subintervals, sample
    position alpha in [0, 1] within each (0.5 = midpoint)."""

    f: str | Callable[[np.ndarray], np.ndarray] = "sin2"
    a_lo: float = 0.0
    b_hi: float = math.pi / 4
    n_sub: int = 4
    alpha: float = 0.5

    def __post_init__(self) -> None:
        if self.b_hi <= self.a_lo:
            raise ValueError("interval must have positive length")
        if self.n_sub < 1:
            raise ValueError("need at least one subinterval")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if isinstance(self.f, str) and self.f != "sin2":
            raise ValueError(f"unknown integrand tag {self.f!r}")

    @property
    def integrand(self) -> Callable[[np.ndarray], np.ndarray]:
        return _sin2 if isinstance(self.f, str) else self.f


def riemann_sum(spec: IntegralSpec) -> float:
    """Sum of f(x_i*) * dx over n_sub subintervals, x_i* = a + (i+alpha)*dx."""
    dx = (spec.b_hi - spec.a_lo) / spec.n_sub
    xs = spec.a_lo + (np.arange(spec.n_sub) + spec.alpha) * dx
    return float(np.sum(spec.integrand(xs)) * dx)


def exact_reference(tag: str) -> float:
    """Registered analytic value: 'sin2' integral or 'sin2_amplitude' mean."""
    try:
        return _EXACT_REFERENCES[tag]
    except KeyError:
        raise ValueError(f"no exact reference registered for {tag!r}") from None


def relative_error(estimate: float, truth: float) -> float:
    if truth == 0:
        raise ValueError("relative error undefined for zero truth")
    return abs(estimate - truth) / abs(truth)


def amplitude_to_integral(a_hat: float, interval_len: float) -> float:
    """Scale an ancilla probability back to the Riemann-sum integral value."""
    if interval_len <= 0:
        raise ValueError("interval length must be positive")
    return a_hat * interval_len


def true_amplitude(n: int) -> float:
    """Reference amplitude for an n-qubit sin^2 domain on [0, pi/4].

    The 2^n-subinterval midpoint mean for small domains; from ten qubits on
    the discretization error is below 1e-7, so the analytic mean stands in.
    """
    if n >= 10:
        return SIN2_EXACT_AMPLITUDE
    spec = IntegralSpec(n_sub=2**n)
    return riemann_sum(spec) / (spec.b_hi - spec.a_lo)
