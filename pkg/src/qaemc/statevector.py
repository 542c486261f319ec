"""Dense statevector simulation of small quantum circuits.

Register convention: bit 0 of the amplitude index is qubit 0, the
ancilla/readout qubit, so basis index i encodes the bitstring
(q_{n-1} ... q_1 q_0) with q_0 least significant.  States are stored as
contiguous complex128 arrays of length 2**n_qubits; every operation is a
pure function that returns a fresh state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, sin, sqrt

import numpy as np

# Single-qubit matrices for the fixed (angle-free) gate kinds.
_SQRT2_INV = 1.0 / sqrt(2.0)
_FIXED_1Q = {
    "h": np.array([[_SQRT2_INV, _SQRT2_INV], [_SQRT2_INV, -_SQRT2_INV]], dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_GATE_KINDS = frozenset({"h", "x", "z", "ry", "cry", "mcz"})


@dataclass(frozen=True)
class Gate:
    """One gate: a fixed/rotation single-qubit kind, optionally controlled.

    ``ry`` uses the half-angle convention ``Ry(phi)|0> = cos(phi/2)|0> +
    sin(phi/2)|1>``.  ``cry`` applies Ry on the target when every control
    qubit is 1 (one control for the rotation ladder, several for
    multiplexed rotations).  ``mcz`` flips the sign of basis states with
    the target and all controls set; it is symmetric in its qubits.
    """

    kind: str
    target: int
    angle: float = 0.0
    controls: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cry" and not self.controls:
            raise ValueError("cry gate needs at least one control")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def inverse(self) -> "Gate":
        """Dagger of the gate; h/x/z/mcz are self-inverse, rotations negate."""
        if self.kind in ("ry", "cry"):
            return Gate(self.kind, self.target, -self.angle, self.controls)
        return self


def h(target: int) -> Gate:
    return Gate("h", target)


def x(target: int) -> Gate:
    return Gate("x", target)


def z(target: int) -> Gate:
    return Gate("z", target)


def ry(angle: float, target: int) -> Gate:
    return Gate("ry", target, angle)


def cry(angle: float, control: int | tuple[int, ...], target: int) -> Gate:
    controls = (control,) if isinstance(control, int) else tuple(control)
    return Gate("cry", target, angle, controls)


def mcz(controls: tuple[int, ...], target: int) -> Gate:
    return Gate("mcz", target, controls=tuple(controls))


def gate_matrix(gate: Gate) -> np.ndarray:
    """2x2 unitary of the single-qubit action (Ry for both ry and cry)."""
    if gate.kind in _FIXED_1Q:
        return _FIXED_1Q[gate.kind]
    if gate.kind in ("ry", "cry"):
        half = gate.angle / 2.0
        return np.array([[cos(half), -sin(half)], [sin(half), cos(half)]], dtype=complex)
    # mcz: the target's 1x1 action on the all-ones subspace is just -1
    return np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed-width register."""

    n_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(
                        f"gate {gate.kind} uses qubit {q}, register has {self.n_qubits}"
                    )

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, tuple(g.inverse() for g in reversed(self.gates)))

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.n_qubits != other.n_qubits:
            raise ValueError("cannot concatenate circuits of different widths")
        return Circuit(self.n_qubits, self.gates + other.gates)


@dataclass
class StateVector:
    n_qubits: int
    amps: np.ndarray = field(repr=False)

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def zero_state(n_qubits: int) -> StateVector:
    """|0...0> on n_qubits."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate, returning a new state; the input is untouched."""
    n = state.n_qubits
    for q in gate.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n}-qubit state")
    amps = state.amps.copy()
    idx = np.arange(amps.size)

    if gate.kind == "mcz":
        mask = np.ones(amps.size, dtype=bool)
        for q in gate.qubits:
            mask &= (idx >> q) & 1 == 1
        amps[mask] *= -1
        return StateVector(n, amps)

    mask = (idx >> gate.target) & 1 == 0
    for c in gate.controls:
        mask &= (idx >> c) & 1 == 1
    i0 = idx[mask]
    i1 = i0 | (1 << gate.target)
    u = gate_matrix(gate)
    a0 = amps[i0]
    a1 = amps[i1]
    amps[i0] = u[0, 0] * a0 + u[0, 1] * a1
    amps[i1] = u[1, 0] * a0 + u[1, 1] * a1
    return StateVector(n, amps)


def run_circuit(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Apply all gates in order, starting from |0...0> unless given a state."""
    state = zero_state(circuit.n_qubits) if initial is None else initial.copy()
    if state.n_qubits != circuit.n_qubits:
        raise ValueError("circuit and state widths differ")
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    assert abs(state.norm() - 1.0) < 1e-10, "statevector norm drifted"
    return state


def prob_ancilla_one(state: StateVector) -> float:
    """Probability of reading 1 on qubit 0, the ancilla marginal."""
    pairs = state.amps.reshape(-1, 2)  # last index axis = bit 0
    return float(np.sum(np.abs(pairs[:, 1]) ** 2))


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense matrix of a circuit, built column-by-column; for small registers."""
    dim = 2**circuit.n_qubits
    u = np.empty((dim, dim), dtype=complex)
    for col in range(dim):
        amps = np.zeros(dim, dtype=complex)
        amps[col] = 1.0
        state = StateVector(circuit.n_qubits, amps)
        for gate in circuit.gates:
            state = apply_gate(state, gate)
        u[:, col] = state.amps
    return u
