"""Swap-test circuit: ancilla-1 probability and shot-based similarity estimates.

Register layout (qubit 0 = least significant bit):

    qubit 0            ancilla (measured)
    qubits 1 .. n      |psi>  (online / test vector)
    qubits n+1 .. 2n   |phi>  (fingerprint vector)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .encoding import AmplitudeVector, EncodingError, rotation_tree_circuit
from .statevector import Gate, RngStream, StateVector, qubit_one_probability, run_circuit, sample_binary

ANCILLA = 0


@dataclass(frozen=True)
class SwapTestCircuit:
    n: int
    gates: tuple[Gate, ...] = field(repr=False)

    @property
    def total_qubits(self) -> int:
        return 2 * self.n + 1

    @property
    def psi_qubits(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def phi_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1, 2 * self.n + 1))

    def run(self) -> StateVector:
        return run_circuit(self.gates, self.total_qubits)


@dataclass(frozen=True)
class SimilarityEstimate:
    """Estimated ``|<phi|psi>|^2``.

    In sampled mode ``value = 1 - 2 * ones_count / shots``, kept unclamped.
    """

    value: float
    mode: Literal["exact", "sampled"]
    shots: int = 0
    ones_count: int = 0
    seed: int | None = None
    stream_id: int | None = None


def _check_pair(psi: AmplitudeVector, phi: AmplitudeVector):
    if len(psi) != len(phi):
        raise EncodingError(f"dimension mismatch: {len(psi)} vs {len(phi)}")
    for v in (psi, phi):
        if abs(float(v.values @ v.values) - 1.0) > 1e-9:
            raise EncodingError("swap test inputs must be normalized")


def build_swap_test(psi: AmplitudeVector, phi: AmplitudeVector) -> SwapTestCircuit:
    """State prep for both registers, then H, controlled-SWAP, H on the ancilla."""
    _check_pair(psi, phi)
    n = psi.num_qubits
    gates = [g.shifted(1) for g in rotation_tree_circuit(psi)]
    gates += [g.shifted(n + 1) for g in rotation_tree_circuit(phi)]
    psi_q = tuple(range(1, n + 1))
    phi_q = tuple(range(n + 1, 2 * n + 1))
    gates += [
        Gate("h", ANCILLA),
        Gate("cswap", ANCILLA, swap_a=psi_q, swap_b=phi_q),
        Gate("h", ANCILLA),
    ]
    return SwapTestCircuit(n, tuple(gates))


def exact_match_probability(psi: AmplitudeVector, phi: AmplitudeVector) -> float:
    """Probability that the ancilla reads 1, from full circuit simulation."""
    final = build_swap_test(psi, phi).run()
    return qubit_one_probability(final, ANCILLA)


def exact_similarity(psi: AmplitudeVector, phi: AmplitudeVector) -> float:
    return min(max(1.0 - 2.0 * exact_match_probability(psi, phi), 0.0), 1.0)


def similarity_from_counts(ones_count: int, shots: int) -> float:
    return 1.0 - 2.0 * ones_count / shots


def estimate_from_probability(p_one: float, shots: int, rng: RngStream) -> SimilarityEstimate:
    ones = sample_binary(p_one, shots, rng)
    return SimilarityEstimate(
        similarity_from_counts(ones, shots), "sampled", int(shots), ones, rng.seed, rng.stream_id
    )


def estimate_similarity(
    psi: AmplitudeVector, phi: AmplitudeVector, shots: int, rng: RngStream
) -> SimilarityEstimate:
    """Run the swap test ``shots`` times and count ancilla ones."""
    return estimate_from_probability(exact_match_probability(psi, phi), shots, rng)


def classical_dot_oracle(psi, phi) -> float:
    """``(sum_i psi_i phi_i)^2`` by a plain loop; reference for the circuit."""
    a = psi.values if isinstance(psi, AmplitudeVector) else psi
    b = phi.values if isinstance(phi, AmplitudeVector) else phi
    if len(a) != len(b):
        raise EncodingError(f"dimension mismatch: {len(a)} vs {len(b)}")
    dot = 0.0
    for x, y in zip(a, b):
        dot += float(x) * float(y)
    return dot * dot
