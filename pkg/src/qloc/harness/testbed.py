"""Synthetic floor testbed: log-distance path loss with Gaussian shadowing."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..encoding import DEFAULT_FLOOR_DBM, RawRssVector, rss_to_amplitudes
from ..fingerprint import Fingerprint, FingerprintDb, Location, TestSample


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TestbedConfig:
    area_x: float = 89.0
    area_y: float = 56.0
    ap_count: int = 4
    train_count: int = 24
    test_count: int = 24
    path_loss_exponent: float = 3.0
    tx_power_at_1ft: float = -30.0
    shadowing_sigma: float = 4.0
    rss_floor: float = DEFAULT_FLOOR_DBM
    seed: int = 0

    __test__ = False

    def validate(self):
        if not (self.area_x > 0 and self.area_y > 0):
            raise ConfigError("area dimensions must be positive")
        if self.ap_count < 1:
            raise ConfigError("ap_count must be >= 1")
        if self.train_count < 1 or self.test_count < 1:
            raise ConfigError("train_count and test_count must be >= 1")
        if not self.path_loss_exponent > 0:
            raise ConfigError("path-loss exponent must be positive")
        if self.shadowing_sigma < 0:
            raise ConfigError("shadowing sigma must be >= 0")
        if self.tx_power_at_1ft <= self.rss_floor:
            raise ConfigError("tx power must exceed the RSS floor")


def _q9(x):
    """Round to 9 significant digits so CSV text round-trips exactly."""
    return np.vectorize(lambda v: float(f"{v:.9g}"), otypes=[float])(x)


def ap_positions(config: TestbedConfig) -> np.ndarray:
    """Corners first (counter-clockwise from the origin); further APs are dealt
    round-robin to the bottom, right, top and left sides at interior points."""
    w, h = config.area_x, config.area_y
    corners = [(0.0, 0.0), (w, 0.0), (w, h), (0.0, h)]
    pts = corners[: config.ap_count]
    extra = config.ap_count - len(pts)
    per_side = [extra // 4 + (1 if s < extra % 4 else 0) for s in range(4)]
    sides = [
        lambda f: (f * w, 0.0),
        lambda f: (w, f * h),
        lambda f: (w - f * w, h),
        lambda f: (0.0, h - f * h),
    ]
    for side, count in zip(sides, per_side):
        pts += [side(j / (count + 1)) for j in range(1, count + 1)]
    return np.array(pts, dtype=float)


def simulate_rss(points: np.ndarray, aps: np.ndarray, config: TestbedConfig, rng: np.random.Generator | None) -> np.ndarray:
    """RSS in dBm for every (point, AP), clipped at the floor."""
    d = np.linalg.norm(points[:, None, :] - aps[None, :, :], axis=-1)
    rss = config.tx_power_at_1ft - 10.0 * config.path_loss_exponent * np.log10(np.maximum(d, 1.0))
    if config.shadowing_sigma > 0:
        if rng is None:
            raise ConfigError("shadowing needs a random generator")
        rss = rss + rng.normal(0.0, config.shadowing_sigma, size=rss.shape)
    return _q9(np.maximum(rss, config.rss_floor))


def _points(rng: np.random.Generator, count: int, config: TestbedConfig) -> np.ndarray:
    xy = rng.uniform(0.0, 1.0, size=(count, 2)) * [config.area_x, config.area_y]
    return _q9(xy)


def generate_testbed(config: TestbedConfig = TestbedConfig()) -> tuple[FingerprintDb, list[TestSample]]:
    """Fingerprint database plus an independent test set, deterministic per seed."""
    config.validate()
    aps = ap_positions(config)
    train_rng, test_rng = (
        np.random.default_rng(s) for s in np.random.SeedSequence(config.seed).spawn(2)
    )

    train_xy = _points(train_rng, config.train_count, config)
    train_rss = simulate_rss(train_xy, aps, config, train_rng)
    test_xy = _points(test_rng, config.test_count, config)
    test_rss = simulate_rss(test_xy, aps, config, test_rng)

    entries = []
    for i, (xy, row) in enumerate(zip(train_xy, train_rss), start=1):
        raw = RawRssVector(tuple(row))
        entries.append(Fingerprint(Location(i, float(xy[0]), float(xy[1])), rss_to_amplitudes(raw, config.rss_floor), raw))
    samples = []
    for i, (xy, row) in enumerate(zip(test_xy, test_rss), start=1):
        raw = RawRssVector(tuple(row))
        samples.append(TestSample(Location(i, float(xy[0]), float(xy[1])), rss_to_amplitudes(raw, config.rss_floor), raw))
    return FingerprintDb(config.ap_count, tuple(entries)), samples


def samples_from_db(db: FingerprintDb) -> list[TestSample]:
    """Use every fingerprint as its own test sample (self-match experiments)."""
    return [TestSample(e.location, e.vector, e.rss) for e in db.entries]


def max_error_ft(config: TestbedConfig) -> float:
    return math.hypot(config.area_x, config.area_y)
