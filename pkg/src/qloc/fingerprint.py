"""Fingerprint database and nearest-location matching (classical or swap test)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional, Sequence

import numpy as np

from .encoding import AmplitudeVector, EncodingError, RawRssVector, num_register_qubits
from .statevector import RngStream
from .swaptest import estimate_from_probability, exact_match_probability


class FingerprintError(ValueError):
    pass


@dataclass(frozen=True)
class Location:
    id: int
    x: float
    y: float


@dataclass(frozen=True, eq=False)
class Fingerprint:
    location: Location
    vector: AmplitudeVector
    rss: Optional[RawRssVector] = None


@dataclass(frozen=True, eq=False)
class FingerprintDb:
    ap_count: int
    entries: tuple[Fingerprint, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        dims = {len(e.vector) for e in self.entries}
        if len(dims) > 1:
            raise FingerprintError(f"fingerprint vectors have mixed dimensions {sorted(dims)}")
        ids = [e.location.id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise FingerprintError("location ids must be unique")

    def __len__(self):
        return len(self.entries)

    @property
    def locations(self) -> list[Location]:
        return [e.location for e in self.entries]

    @property
    def dim(self) -> int:
        return len(self.entries[0].vector) if self.entries else 0


@dataclass(frozen=True, eq=False)
class TestSample:
    truth: Location
    vector: AmplitudeVector
    rss: Optional[RawRssVector] = None

    __test__ = False  # keep pytest from collecting this class


@dataclass(frozen=True)
class MatchMode:
    kind: Literal["classical", "quantum_exact", "quantum_shots"]
    shots: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("classical", "quantum_exact", "quantum_shots"):
            raise FingerprintError(f"unknown match mode {self.kind!r}")
        if self.kind == "quantum_shots" and self.shots < 1:
            raise FingerprintError("quantum_shots mode needs shots >= 1")

    @classmethod
    def classical(cls) -> "MatchMode":
        return cls("classical")

    @classmethod
    def quantum_exact(cls) -> "MatchMode":
        return cls("quantum_exact")

    @classmethod
    def quantum_shots(cls, shots: int, seed: int = 0) -> "MatchMode":
        return cls("quantum_shots", shots, seed)


def classical_cosine_similarity(a: AmplitudeVector, b: AmplitudeVector) -> float:
    """Squared cosine between two normalized vectors."""
    if len(a) != len(b):
        raise EncodingError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return float(np.dot(a.values, b.values)) ** 2


def distance_error(estimated: Location, truth: Location) -> float:
    return math.hypot(estimated.x - truth.x, estimated.y - truth.y)


def _check(db: FingerprintDb, sample: TestSample):
    if len(db) == 0:
        raise FingerprintError("fingerprint database is empty")
    if len(sample.vector) != db.dim:
        raise FingerprintError(
            f"sample dimension {len(sample.vector)} does not match database dimension {db.dim}"
        )


def match_probabilities(db: FingerprintDb, sample: TestSample) -> np.ndarray:
    """Ancilla-1 probability of the swap test between ``sample`` and every entry."""
    _check(db, sample)
    return np.array([exact_match_probability(sample.vector, e.vector) for e in db.entries])


def scores_from_probabilities(
    db: FingerprintDb, p_one: np.ndarray, mode: MatchMode, sample_index: int = 0
) -> np.ndarray:
    if mode.kind == "quantum_exact":
        return np.clip(1.0 - 2.0 * p_one, 0.0, 1.0)
    if mode.kind != "quantum_shots":
        raise FingerprintError("probabilities only apply to quantum modes")
    return np.array(
        [
            estimate_from_probability(
                p, mode.shots, RngStream(mode.seed, e.location.id, (sample_index,))
            ).value
            for p, e in zip(p_one, db.entries)
        ]
    )


def similarity_scores(
    db: FingerprintDb, sample: TestSample, mode: MatchMode, sample_index: int = 0
) -> np.ndarray:
    """One similarity per db entry, in db order.

    In shot mode the comparison against location ``id`` draws from the stream
    keyed by ``(mode.seed, id, sample_index)``.
    """
    _check(db, sample)
    if mode.kind == "classical":
        return np.array([classical_cosine_similarity(sample.vector, e.vector) for e in db.entries])
    return scores_from_probabilities(db, match_probabilities(db, sample), mode, sample_index)


def select_best(db: FingerprintDb, scores: Sequence[float]) -> Location:
    """Highest score wins; ties go to the lowest location id."""
    scores = np.asarray(scores)
    best = scores.max()
    tied = [e.location for e, s in zip(db.entries, scores) if s == best]
    return min(tied, key=lambda loc: loc.id)


def localize(
    db: FingerprintDb, sample: TestSample, mode: MatchMode, sample_index: int = 0
) -> tuple[Location, np.ndarray]:
    scores = similarity_scores(db, sample, mode, sample_index)
    return select_best(db, scores), scores


class ResourceCost(NamedTuple):
    qubits_per_match: int
    circuit_runs: int
    classical_space: int


def resource_cost(ap_count: int, location_count: int) -> ResourceCost:
    """Qubits per swap test, swap tests per query, and reals stored classically."""
    if ap_count < 1 or location_count < 1:
        raise FingerprintError("ap_count and location_count must be >= 1")
    return ResourceCost(
        2 * num_register_qubits(ap_count) + 1, location_count, ap_count * location_count
    )
