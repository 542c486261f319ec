import math

import numpy as np
import pytest

from qaemc.oracle import OracleSpec


@pytest.fixture
def spec_n2() -> OracleSpec:
    return OracleSpec(n=2, b=math.pi / 4, alpha=0.5)


@pytest.fixture
def spec_n3() -> OracleSpec:
    return OracleSpec(n=3, b=math.pi / 4, alpha=0.5)


def sin2_mean(n: int, b: float = math.pi / 4, alpha: float = 0.5) -> float:
    """Scalar-sum reference for the ancilla-1 probability: mean of sin^2 at
    the 2^n sample points.  Independent of the statevector path."""
    xs = (np.arange(2**n) + alpha) * b / 2**n
    return float(np.mean(np.sin(xs) ** 2))
