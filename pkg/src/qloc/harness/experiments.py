"""Shot-count sweep and error-CDF experiments over a fingerprint database."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..fingerprint import (
    FingerprintDb,
    Location,
    MatchMode,
    TestSample,
    distance_error,
    match_probabilities,
    scores_from_probabilities,
    select_best,
    similarity_scores,
)

CDF_HEADER = ("error_ft", "cum_fraction")
SWEEP_HEADER = ("shots", "median_error_ft")
DEFAULT_SHOT_LIST = (16, 64, 256, 1024, 4096, 16384)


class ExperimentError(ValueError):
    pass


@dataclass(frozen=True)
class LocalizationResult:
    sample_index: int
    truth: Location
    estimate: Location
    error_ft: float
    best_score: float
    runner_up_gap: float  # best score minus second-best; inf for a 1-entry db


@dataclass
class ExperimentReport:
    kind: str
    header: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    agreement: float | None = None


def _result(db, sample, index, scores) -> LocalizationResult:
    est = select_best(db, scores)
    top = np.sort(scores)[::-1]
    gap = float(top[0] - top[1]) if len(top) > 1 else float("inf")
    return LocalizationResult(index, sample.truth, est, distance_error(est, sample.truth), float(top[0]), gap)


def localize_all(db: FingerprintDb, samples: Sequence[TestSample], mode: MatchMode) -> list[LocalizationResult]:
    if not samples:
        raise ExperimentError("no test samples")
    return [_result(db, s, i, similarity_scores(db, s, mode, i)) for i, s in enumerate(samples)]


def cdf_table(errors: Sequence[float]) -> list[tuple[float, float]]:
    errs = sorted(float(e) for e in errors)
    if not errs:
        raise ExperimentError("no errors to tabulate")
    n = len(errs)
    return [(e, (i + 1) / n) for i, e in enumerate(errs)]


def run_cdf(db: FingerprintDb, samples: Sequence[TestSample], mode: MatchMode) -> ExperimentReport:
    results = localize_all(db, samples, mode)
    return ExperimentReport("cdf", CDF_HEADER, cdf_table([r.error_ft for r in results]))


def probability_matrix(db: FingerprintDb, samples: Sequence[TestSample]) -> np.ndarray:
    """Swap-test ancilla-1 probabilities, shape (samples, db entries)."""
    return np.array([match_probabilities(db, s) for s in samples])


def shot_errors(
    db: FingerprintDb, samples: Sequence[TestSample], p_one: np.ndarray, mode: MatchMode
) -> list[float]:
    errs = []
    for i, s in enumerate(samples):
        scores = scores_from_probabilities(db, p_one[i], mode, i)
        errs.append(distance_error(select_best(db, scores), s.truth))
    return errs


def run_shot_sweep(
    db: FingerprintDb,
    samples: Sequence[TestSample],
    shot_list: Sequence[int],
    seeds: Sequence[int],
) -> ExperimentReport:
    """Median localization error per shot count, pooled over samples and seeds.

    The last row (``shots = inf``) is the exact-probability reference.
    """
    if not shot_list:
        raise ExperimentError("shot list is empty")
    if not seeds:
        raise ExperimentError("need at least one seed")
    if not samples:
        raise ExperimentError("no test samples")
    p_one = probability_matrix(db, samples)
    rows = []
    for k in shot_list:
        errs = []
        for seed in seeds:
            errs += shot_errors(db, samples, p_one, MatchMode.quantum_shots(int(k), int(seed)))
        rows.append((int(k), float(np.median(errs))))
    exact = shot_errors(db, samples, p_one, MatchMode.quantum_exact())
    rows.append((float("inf"), float(np.median(exact))))
    return ExperimentReport("sweep", SWEEP_HEADER, rows)


def run_compare(db: FingerprintDb, samples: Sequence[TestSample], tie_tol: float = 1e-9):
    """Classical vs exact swap-test localization.

    Agreement is measured over samples whose classical top two scores differ
    by more than ``tie_tol``. Returns ``(agreement, classical_cdf, quantum_cdf)``.
    """
    classical = localize_all(db, samples, MatchMode.classical())
    quantum = localize_all(db, samples, MatchMode.quantum_exact())
    distinct = [(c, q) for c, q in zip(classical, quantum) if c.runner_up_gap > tie_tol]
    agreement = (
        sum(c.estimate.id == q.estimate.id for c, q in distinct) / len(distinct) if distinct else 1.0
    )
    c_rep = ExperimentReport("cdf", CDF_HEADER, cdf_table([r.error_ft for r in classical]), agreement)
    q_rep = ExperimentReport("cdf", CDF_HEADER, cdf_table([r.error_ft for r in quantum]), agreement)
    return agreement, c_rep, q_rep
