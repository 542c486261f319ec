"""Construction of the state-preparation oracle A and the Grover operator Q.

A loads a table of function values f(x_i) in [0, 1] into the ancilla of an
(n+1)-qubit register:

    A |0>_n |0> = sum_i 2^{-n/2} |i>_n ( sqrt(1-f(x_i)) |0> + sqrt(f(x_i)) |1> )

so the ancilla-1 probability is the mean of the table, i.e. a Riemann sum
divided by the interval length.  For f(x) = sin^2(x) on [0, b] the rotation
angles are linear in the sample point, which a ladder of one plain Ry plus
one controlled Ry per domain qubit realizes exactly.  Arbitrary tables fall
back to one multiplexed (multi-controlled) Ry per subinterval.

Q = A S0 A^{-1} S_chi amplifies the ancilla-1 amplitude: each application
advances the effective rotation angle by 2*theta where sin^2(theta) = a.
S0 is realized as X-conjugated multi-controlled Z, which equals the
reflection about |0...0> exactly; any residual global phase would be
unobservable in measurement probabilities anyway.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .statevector import Circuit, Gate, cry, h, mcz, ry, x, z

_F_KINDS = frozenset({"sin2", "table"})


@dataclass(frozen=True)
class OracleSpec:
    """Integrand loading spec for an n-qubit domain on [0, b].

    ``alpha`` places the sample point inside each subinterval (0 left
    endpoint, 0.5 midpoint, 1 right endpoint).  ``f_kind`` selects the
    built-in sin^2 ladder or an explicit per-subinterval ``angles`` table
    of full ancilla rotations (2*arcsin(sqrt(f_i)) each).
    """

    n: int
    b: float
    alpha: float = 0.5
    f_kind: str = "sin2"
    angles: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one domain qubit")
        if self.b <= 0:
            raise ValueError("upper integration limit must be positive")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.f_kind not in _F_KINDS:
            raise ValueError(f"unsupported integrand kind {self.f_kind!r}")
        if self.f_kind == "table":
            if self.angles is None or len(self.angles) != 2**self.n:
                raise ValueError(f"angle table must have {2**self.n} entries")
        elif self.angles is not None:
            raise ValueError("angle table only valid with f_kind='table'")

    @property
    def n_qubits(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class GroverOperator:
    circuit: Circuit


def angle_table_from_values(values) -> tuple[float, ...]:
    """Ancilla rotations 2*arcsin(sqrt(f_i)) for a table of f values in [0, 1]."""
    out = []
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"table value {v} outside [0, 1]")
        out.append(2.0 * math.asin(math.sqrt(v)))
    return tuple(out)


def build_a(spec: OracleSpec) -> Circuit:
    """State-preparation circuit: domain Hadamards, then the ancilla rotations."""
    gates: list[Gate] = [h(j) for j in range(1, spec.n + 1)]
    if spec.f_kind == "sin2":
        # Ladder: domain qubit j contributes bit j-1 of the sample index, so
        # its rotation is b / 2^(n-j); alpha supplies the in-subinterval offset.
        gates.append(ry(spec.alpha * spec.b / 2 ** (spec.n - 1), 0))
        for j in range(1, spec.n + 1):
            gates.append(cry(spec.b / 2 ** (spec.n - j), j, 0))
    else:
        domain = tuple(range(1, spec.n + 1))
        for i, angle in enumerate(spec.angles):
            flips = [x(j) for j in domain if not (i >> (j - 1)) & 1]
            gates.extend(flips)
            gates.append(cry(angle, domain, 0))
            gates.extend(flips)
    return Circuit(spec.n_qubits, tuple(gates))


def build_a_inverse(spec: OracleSpec) -> Circuit:
    """Gate-reversed, angle-negated A."""
    return build_a(spec).inverse()


def build_q(spec: OracleSpec) -> GroverOperator:
    """Grover operator as a circuit: S_chi, then A^{-1}, then S0, then A."""
    nq = spec.n_qubits
    all_x = tuple(x(q) for q in range(nq))
    s0 = all_x + (mcz(tuple(range(1, nq)), 0),) + all_x
    gates = (z(0),) + build_a_inverse(spec).gates + s0 + build_a(spec).gates
    return GroverOperator(Circuit(nq, gates))


def theta_from_amplitude(a: float) -> float:
    """Rotation angle in [0, pi/2] with sin^2(theta) = a."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"amplitude {a} outside [0, 1]")
    return math.asin(math.sqrt(a))
