"""Dense statevector simulator with the handful of gates the swap test needs.

Qubit ordering
--------------
Qubit 0 is the LEAST significant bit of the basis index. For a 3-qubit
register the amplitude at index ``0b110`` belongs to ``|q2=1, q1=1, q0=0>``.
Every module in this package follows that convention.

All gate functions are pure: they return a new :class:`StateVector` and never
mutate their input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

MAX_QUBITS = 24
NORM_TOL = 1e-9

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


class SimulatorError(ValueError):
    """Invalid register size, qubit index or shot count."""


@dataclass(frozen=True)
class RngStream:
    """Keyed random stream: the same key always yields the same draws.

    ``substream`` carries extra key material (e.g. a test-sample index) so
    callers can derive many independent streams from one master seed.
    """

    seed: int
    stream_id: int = 0
    substream: tuple[int, ...] = ()

    def generator(self) -> np.random.Generator:
        key = [self.seed & (2**64 - 1), self.stream_id & (2**64 - 1), *self.substream]
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise SimulatorError(f"num_qubits must be in [1, {MAX_QUBITS}], got {self.num_qubits}")
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise SimulatorError(
                f"expected {1 << self.num_qubits} amplitudes, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise SimulatorError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, check_norm: bool = True) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        n = amps.size.bit_length() - 1
        if amps.ndim != 1 or amps.size != 1 << n:
            raise SimulatorError(f"amplitude count {amps.size} is not a power of two")
        state = cls(n, amps)
        if check_norm and abs(state.norm_squared() - 1.0) > NORM_TOL:
            raise SimulatorError(f"state is not normalized (norm^2 = {state.norm_squared()!r})")
        return state

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __len__(self):
        return self.amplitudes.size


def new_state(num_qubits: int) -> StateVector:
    """Return ``|0...0>`` on ``num_qubits`` qubits."""
    if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= MAX_QUBITS:
        raise SimulatorError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits!r}")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(int(num_qubits), amps)


def _check_qubit(state: StateVector, qubit: int) -> int:
    if not isinstance(qubit, (int, np.integer)) or not 0 <= qubit < state.num_qubits:
        raise SimulatorError(f"qubit {qubit!r} out of range for {state.num_qubits}-qubit state")
    return int(qubit)


def _apply_1q(state: StateVector, qubit: int, gate: np.ndarray) -> StateVector:
    n = state.num_qubits
    # C-order reshape puts qubit q on axis n-1-q
    axis = n - 1 - qubit
    psi = state.amplitudes.reshape((2,) * n)
    out = np.moveaxis(np.tensordot(gate, psi, axes=([1], [axis])), 0, axis)
    return StateVector(n, out.reshape(-1))


def u_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def apply_hadamard(state: StateVector, qubit: int) -> StateVector:
    return _apply_1q(state, _check_qubit(state, qubit), _H)


def apply_x(state: StateVector, qubit: int) -> StateVector:
    q = _check_qubit(state, qubit)
    idx = np.arange(len(state)) ^ (1 << q)
    return StateVector(state.num_qubits, state.amplitudes[idx])


def apply_u(state: StateVector, qubit: int, theta: float) -> StateVector:
    """Apply the real rotation ``[[cos t/2, -sin t/2], [sin t/2, cos t/2]]``."""
    q = _check_qubit(state, qubit)
    if not np.isfinite(theta):
        raise SimulatorError(f"theta must be finite, got {theta!r}")
    return _apply_1q(state, q, u_matrix(theta))


def apply_controlled_u(
    state: StateVector, target: int, theta: float, controls: Mapping[int, int]
) -> StateVector:
    """Apply U(theta) to ``target`` on the subspace where every control qubit
    holds its requested bit value (0 or 1)."""
    t = _check_qubit(state, target)
    if not controls:
        return apply_u(state, t, theta)
    if not np.isfinite(theta):
        raise SimulatorError(f"theta must be finite, got {theta!r}")
    mask = value = 0
    for q, bit in controls.items():
        q = _check_qubit(state, q)
        if q == t:
            raise SimulatorError("target cannot also be a control")
        if bit not in (0, 1):
            raise SimulatorError(f"control value must be 0 or 1, got {bit!r}")
        mask |= 1 << q
        value |= bit << q
    idx = np.arange(len(state))
    lo = idx[((idx & mask) == value) & ((idx >> t) & 1 == 0)]
    hi = lo | (1 << t)
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    amps = state.amplitudes.copy()
    a0, a1 = amps[lo], amps[hi]
    amps[lo] = c * a0 - s * a1
    amps[hi] = s * a0 + c * a1
    return StateVector(state.num_qubits, amps)


def apply_cswap(
    state: StateVector, control: int, targets_a: Sequence[int], targets_b: Sequence[int]
) -> StateVector:
    """Controlled-SWAP as a basis permutation.

    Where the control bit is 1, the bit at ``targets_a[i]`` is exchanged with
    the bit at ``targets_b[i]`` for every ``i``.
    """
    if len(targets_a) != len(targets_b):
        raise SimulatorError("target registers must have equal length")
    qubits = [control, *targets_a, *targets_b]
    for q in qubits:
        _check_qubit(state, q)
    if len(set(qubits)) != len(qubits):
        raise SimulatorError(f"control and target qubits must be distinct, got {qubits}")

    idx = np.arange(len(state))
    src = idx.copy()
    on = (idx >> control) & 1 == 1
    for a, b in zip(targets_a, targets_b):
        bit_a = (idx >> a) & 1
        bit_b = (idx >> b) & 1
        flip = on & (bit_a != bit_b)
        src[flip] ^= (1 << a) | (1 << b)
    # permutation is an involution, so gathering equals scattering
    return StateVector(state.num_qubits, state.amplitudes[src])


def qubit_one_probability(state: StateVector, qubit: int) -> float:
    q = _check_qubit(state, qubit)
    n = state.num_qubits
    probs = state.probabilities().reshape((2,) * n)
    p = float(np.take(probs, 1, axis=n - 1 - q).sum())
    return min(max(p, 0.0), 1.0)


def sample_qubit(state: StateVector, qubit: int, shots: int, rng: RngStream) -> int:
    """Number of ``1`` outcomes when measuring ``qubit`` in ``shots`` fresh runs."""
    return sample_binary(qubit_one_probability(state, qubit), shots, rng)


def sample_binary(p_one: float, shots: int, rng: RngStream) -> int:
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise SimulatorError(f"shots must be a positive integer, got {shots!r}")
    p = min(max(float(p_one), 0.0), 1.0)
    return int(rng.generator().binomial(int(shots), p))


@dataclass(frozen=True)
class Gate:
    """One circuit instruction.

    ``kind`` is ``"h"``, ``"x"``, ``"u"`` or ``"cswap"``. For ``"u"``,
    ``controls`` is a tuple of ``(qubit, bit)`` pairs (empty = uncontrolled).
    For ``"cswap"``, ``target`` is the control wire and ``swap_a``/``swap_b``
    are the paired target registers.
    """

    kind: str
    target: int
    theta: float = 0.0
    controls: tuple[tuple[int, int], ...] = ()
    swap_a: tuple[int, ...] = ()
    swap_b: tuple[int, ...] = ()

    def shifted(self, offset: int) -> "Gate":
        return Gate(
            self.kind,
            self.target + offset,
            self.theta,
            tuple((q + offset, b) for q, b in self.controls),
            tuple(q + offset for q in self.swap_a),
            tuple(q + offset for q in self.swap_b),
        )


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    if gate.kind == "h":
        return apply_hadamard(state, gate.target)
    if gate.kind == "x":
        return apply_x(state, gate.target)
    if gate.kind == "u":
        return apply_controlled_u(state, gate.target, gate.theta, dict(gate.controls))
    if gate.kind == "cswap":
        return apply_cswap(state, gate.target, gate.swap_a, gate.swap_b)
    raise SimulatorError(f"unknown gate kind {gate.kind!r}")


def run_circuit(gates: Sequence[Gate], num_qubits: int, initial: StateVector | None = None) -> StateVector:
    state = new_state(num_qubits) if initial is None else initial
    if state.num_qubits != num_qubits:
        raise SimulatorError("initial state has the wrong number of qubits")
    for g in gates:
        state = apply_gate(state, g)
    return state
