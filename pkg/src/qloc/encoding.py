"""RSS readings -> normalized nonnegative amplitude vectors -> register states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .statevector import Gate, StateVector, run_circuit

DEFAULT_FLOOR_DBM = -100.0
PREP_NORM_TOL = 1e-6


class EncodingError(ValueError):
    """Raised for vectors that cannot be encoded (degenerate, negative, unnormalized)."""


@dataclass(frozen=True)
class RawRssVector:
    """Per-AP readings in dBm; ``None`` marks an AP that was not heard."""

    readings: tuple[Optional[float], ...]

    def __post_init__(self):
        cleaned = []
        for r in self.readings:
            if r is None or (isinstance(r, float) and math.isnan(r)):
                cleaned.append(None)
            else:
                r = float(r)
                if not math.isfinite(r):
                    raise EncodingError(f"reading {r!r} is not finite")
                cleaned.append(r)
        if not cleaned:
            raise EncodingError("RSS vector needs at least one AP")
        object.__setattr__(self, "readings", tuple(cleaned))

    def __len__(self):
        return len(self.readings)


def next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def num_register_qubits(n_aps: int) -> int:
    """Qubits needed to amplitude-encode ``n_aps`` values; never less than one."""
    if n_aps < 1:
        raise EncodingError("need at least one AP")
    return max(1, (n_aps - 1).bit_length())


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    values: np.ndarray
    source_dim: int

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).reshape(-1)
        if v.size < 2 or v.size & (v.size - 1):
            raise EncodingError(f"padded length must be a power of two >= 2, got {v.size}")
        if not 1 <= self.source_dim <= v.size:
            raise EncodingError(f"source_dim {self.source_dim} incompatible with length {v.size}")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise EncodingError("amplitudes must be finite and nonnegative")
        if np.any(v[self.source_dim:] != 0):
            raise EncodingError("padding entries must be zero")
        if abs(float(v @ v) - 1.0) > 1e-9:
            raise EncodingError(f"amplitudes are not normalized (sum of squares {float(v @ v)!r})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_values(cls, values: Sequence[float], normalize: bool = True) -> "AmplitudeVector":
        """Build from raw nonnegative values, zero-padding to a power of two.

        With ``normalize`` the values are rescaled to unit L2 norm first.
        """
        v = np.asarray(values, dtype=np.float64).reshape(-1)
        if v.size == 0:
            raise EncodingError("empty vector")
        if np.any(v < 0):
            raise EncodingError("amplitudes must be nonnegative")
        norm = float(np.sqrt(v @ v))
        if norm == 0.0:
            raise EncodingError("zero vector cannot be normalized")
        if normalize:
            v = v / norm
        dim = max(2, next_pow2(v.size))
        padded = np.zeros(dim)
        padded[: v.size] = v
        return cls(padded, v.size)

    @property
    def num_qubits(self) -> int:
        return self.values.size.bit_length() - 1

    def __len__(self):
        return self.values.size


def rss_to_amplitudes(raw: RawRssVector | Sequence[Optional[float]], floor: float = DEFAULT_FLOOR_DBM) -> AmplitudeVector:
    """Shift readings by ``floor``, zero the missing APs, L2-normalize, pad."""
    if not isinstance(raw, RawRssVector):
        raw = RawRssVector(tuple(raw))
    shifted = np.zeros(len(raw))
    for i, r in enumerate(raw.readings):
        if r is None:
            continue
        if r < floor:
            raise EncodingError(f"reading {r} dBm at AP {i + 1} is below the floor {floor} dBm")
        shifted[i] = r - floor
    if not np.any(shifted > 0):
        raise EncodingError("every reading is missing or at the floor; nothing to normalize")
    return AmplitudeVector.from_values(shifted)


def prepare_state(vec: AmplitudeVector) -> StateVector:
    """Load ``vec`` directly as the amplitudes of a ``log2(len(vec))``-qubit register."""
    v = np.asarray(vec.values if isinstance(vec, AmplitudeVector) else vec, dtype=np.float64)
    if abs(float(v @ v) - 1.0) > PREP_NORM_TOL:
        raise EncodingError(f"cannot prepare an unnormalized vector (sum of squares {float(v @ v)!r})")
    return StateVector.from_amplitudes(v, check_norm=False)


def single_qubit_prep_angle(a: float, b: float) -> float:
    """Angle theta with ``U(theta)|0> = a|0> + b|1>`` for nonnegative a, b."""
    if a < 0 or b < 0:
        raise EncodingError("amplitudes must be nonnegative")
    if a == 0 and b == 0:
        raise EncodingError("both amplitudes are zero")
    if a == 0:
        return math.pi
    return 2.0 * math.atan(b / a)


def rotation_tree_circuit(vec: AmplitudeVector) -> list[Gate]:
    """Binary tree of (multi-)controlled U rotations preparing ``vec`` from |0..0>.

    The most significant qubit is split first. Each node's rotation on qubit
    ``j`` is conditioned on the already-fixed higher bits and takes the angle
    ``2*atan(sqrt(mass right) / sqrt(mass left))`` of its two subtrees. A
    zero-mass node gets angle 0 and no children.
    """
    v = np.asarray(vec.values if isinstance(vec, AmplitudeVector) else vec, dtype=np.float64)
    if v.size < 2 or v.size & (v.size - 1):
        raise EncodingError("length must be a power of two >= 2")
    if np.any(v < 0):
        raise EncodingError("rotation tree only handles nonnegative amplitudes")
    mass = v * v
    if mass.sum() == 0:
        raise EncodingError("degenerate (zero) vector")
    n = v.size.bit_length() - 1

    gates: list[Gate] = []

    def visit(level: int, prefix: int):
        # qubit j = n-1-level; prefix holds the bits of qubits n-1 .. j+1
        j = n - 1 - level
        width = 1 << (j + 1)
        start = prefix * width
        left = mass[start : start + width // 2].sum()
        right = mass[start + width // 2 : start + width].sum()
        controls = tuple((n - 1 - k, (prefix >> (level - 1 - k)) & 1) for k in range(level))
        if left + right == 0:
            gates.append(Gate("u", j, 0.0, controls))
            return
        gates.append(Gate("u", j, 2.0 * math.atan2(math.sqrt(right), math.sqrt(left)), controls))
        if j == 0:
            return
        visit(level + 1, prefix << 1)
        visit(level + 1, (prefix << 1) | 1)

    visit(0, 0)
    return gates


def simulate_prep(vec: AmplitudeVector) -> StateVector:
    """Run :func:`rotation_tree_circuit` from |0..0>."""
    return run_circuit(rotation_tree_circuit(vec), vec.num_qubits)
