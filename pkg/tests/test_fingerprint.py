import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qloc.encoding import AmplitudeVector, EncodingError
from qloc.fingerprint import (
    Fingerprint,
    FingerprintDb,
    FingerprintError,
    Location,
    MatchMode,
    TestSample,
    classical_cosine_similarity,
    distance_error,
    localize,
    resource_cost,
)
from qloc.harness import generate_testbed, TestbedConfig

from conftest import random_nonneg

MODES = [MatchMode.classical(), MatchMode.quantum_exact()]


def av(*v):
    return AmplitudeVector.from_values(v)


def make_db(vectors, ids=None):
    ids = ids or range(1, len(vectors) + 1)
    return FingerprintDb(
        len(vectors[0]), tuple(Fingerprint(Location(i, float(i), 0.0), v) for i, v in zip(ids, vectors))
    )


def sample(v, x=0.0, y=0.0):
    return TestSample(Location(0, x, y), v)


class TestLocalize:
    def test_worked_example_one_location(self):
        db = make_db([av(0.39, 0.92)])
        loc, scores = localize(db, sample(av(0.24, 0.97)), MatchMode.quantum_exact())
        assert loc.id == 1
        # normalized inputs give 0.9751; the raw-value figure 0.972 is within 4e-3
        assert scores[0] == pytest.approx(0.972, abs=4e-3)

    @pytest.mark.parametrize("mode", MODES)
    def test_self_match(self, mode, rng):
        vecs = [av(*random_nonneg(rng, 4)) for _ in range(6)]
        loc, scores = localize(make_db(vecs), sample(vecs[3]), mode)
        assert loc.id == 4
        assert scores[3] == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("mode", MODES + [MatchMode.quantum_shots(64, 1)])
    def test_tie_goes_to_lowest_id(self, mode):
        v = av(0.6, 0.8)
        db = make_db([av(1, 0), v, v], ids=[9, 7, 3])
        loc, _ = localize(db, sample(v), mode)
        assert loc.id == 3

    def test_empty_db(self):
        with pytest.raises(FingerprintError):
            localize(FingerprintDb(2, ()), sample(av(1, 0)), MatchMode.classical())

    def test_dimension_mismatch(self):
        with pytest.raises(FingerprintError):
            localize(make_db([av(1, 0)]), sample(av(1, 0, 0, 0)), MatchMode.classical())

    def test_duplicate_ids(self):
        with pytest.raises(FingerprintError):
            make_db([av(1, 0), av(0, 1)], ids=[1, 1])

    def test_shots_mode_needs_shots(self):
        with pytest.raises(FingerprintError):
            MatchMode("quantum_shots", 0)

    def test_shot_streams_keyed_by_location_and_sample(self, rng):
        vecs = [av(*random_nonneg(rng, 4)) for _ in range(5)]
        db = make_db(vecs)
        s = sample(av(*random_nonneg(rng, 4)))
        mode = MatchMode.quantum_shots(128, 42)
        _, a = localize(db, s, mode, sample_index=3)
        _, b = localize(db, s, mode, sample_index=3)
        _, c = localize(db, s, mode, sample_index=4)
        assert np.array_equal(a, b) and not np.array_equal(a, c)
        # reordering the db does not change the draw for a given location id
        rev = FingerprintDb(db.ap_count, db.entries[::-1])
        _, d = localize(rev, s, mode, sample_index=3)
        assert np.array_equal(a, d[::-1])


class TestDistance:
    @pytest.mark.parametrize("a,b,d", [((0, 0), (3, 4), 5.0), ((2, 2), (2, 2), 0.0), ((1, 1), (1, 9), 8.0)])
    def test_examples(self, a, b, d):
        assert distance_error(Location(0, *a), Location(1, *b)) == d


class TestCosine:
    def test_identical(self):
        assert classical_cosine_similarity(av(0.6, 0.8), av(0.6, 0.8)) == pytest.approx(1.0, abs=1e-15)

    def test_orthogonal(self):
        assert classical_cosine_similarity(av(1, 0), av(0, 1)) == 0.0

    def test_worked_example(self):
        # unnormalized (0.39*0.24 + 0.92*0.97)^2 = 0.97220; normalized inputs divide by 0.9985^2
        got = classical_cosine_similarity(av(0.39, 0.92), av(0.24, 0.97))
        assert got == pytest.approx(0.97220 / 0.9985**2, abs=1e-5)

    def test_mismatch(self):
        with pytest.raises(EncodingError):
            classical_cosine_similarity(av(1, 0), av(1, 0, 0, 0))


class TestResourceCost:
    @pytest.mark.parametrize(
        "n,m,expected", [(4, 24, (5, 24, 96)), (1, 1, (3, 1, 1)), (256, 100, (17, 100, 25600))]
    )
    def test_examples(self, n, m, expected):
        assert resource_cost(n, m) == expected

    def test_invalid(self):
        with pytest.raises(FingerprintError):
            resource_cost(0, 3)


db_strategy = st.tuples(st.integers(2, 10), st.integers(0, 2**32 - 1))


@given(db_strategy)
def test_classical_quantum_agree(params):
    m, seed = params
    r = np.random.default_rng(seed)
    vecs = [av(*random_nonneg(r, 4)) for _ in range(m)]
    s = sample(av(*random_nonneg(r, 4)))
    db = make_db(vecs)
    c_loc, c_scores = localize(db, s, MatchMode.classical())
    q_loc, q_scores = localize(db, s, MatchMode.quantum_exact())
    assert np.all((c_scores >= 0) & (c_scores <= 1)) and np.all((q_scores >= 0) & (q_scores <= 1))
    top = np.sort(c_scores)
    if top[-1] - top[-2] > 1e-9:
        assert c_loc == q_loc


@given(db_strategy, st.randoms(use_true_random=False))
def test_permutation_invariance(params, rnd):
    m, seed = params
    r = np.random.default_rng(seed)
    vecs = [av(*random_nonneg(r, 4)) for _ in range(m)]
    s = sample(av(*random_nonneg(r, 4)))
    db = make_db(vecs)
    order = list(db.entries)
    rnd.shuffle(order)
    shuffled = FingerprintDb(db.ap_count, tuple(order))
    for mode in MODES:
        loc, scores = localize(db, s, mode)
        if np.sort(scores)[-1] - np.sort(scores)[-2] > 1e-9:
            assert localize(shuffled, s, mode)[0] == loc


def test_shot_mode_converges():
    db, samples = generate_testbed(TestbedConfig(seed=42))
    exact = [localize(db, s, MatchMode.quantum_exact(), i)[0].id for i, s in enumerate(samples)]
    fractions = []
    for k in (16, 256, 4096):
        agree = []
        for seed in range(20):
            mode = MatchMode.quantum_shots(k, seed)
            agree += [localize(db, s, mode, i)[0].id == exact[i] for i, s in enumerate(samples)]
        fractions.append(np.mean(agree))
    assert fractions[1] >= fractions[0] - 0.05
    assert fractions[2] >= fractions[1] - 0.05
