"""CSV persistence for fingerprints, test samples and result tables.

Fingerprint and sample files share one schema::

    loc_id,x_ft,y_ft,ap_1,...,ap_N

with dBm readings and an empty cell for an AP that was not heard. Numbers are
written with 9 significant digits.
"""

from __future__ import annotations

import csv
import math
import numbers
from pathlib import Path
from typing import Iterable, Sequence

from ..encoding import DEFAULT_FLOOR_DBM, EncodingError, RawRssVector, rss_to_amplitudes
from ..fingerprint import Fingerprint, FingerprintDb, Location, TestSample


class CsvFormatError(ValueError):
    pass


def fmt(x: float) -> str:
    if isinstance(x, numbers.Integral) and not isinstance(x, bool):
        return str(int(x))
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.9g}"


def _write(path, header: Sequence[str], rows: Iterable[Sequence[str]]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _location_rows(items) -> list[list[str]]:
    rows = []
    for loc, raw in items:
        if raw is None:
            raise CsvFormatError(f"location {loc.id} has no raw RSS readings to save")
        rows.append(
            [str(loc.id), fmt(loc.x), fmt(loc.y)]
            + ["" if r is None else fmt(r) for r in raw.readings]
        )
    return rows


def _header(ap_count: int) -> list[str]:
    return ["loc_id", "x_ft", "y_ft"] + [f"ap_{i}" for i in range(1, ap_count + 1)]


def save_fingerprints(db: FingerprintDb, path):
    _write(path, _header(db.ap_count), _location_rows((e.location, e.rss) for e in db.entries))


def save_samples(samples: Sequence[TestSample], path):
    if not samples:
        raise CsvFormatError("no samples to save")
    ap_count = len(samples[0].rss) if samples[0].rss is not None else 0
    _write(path, _header(ap_count), _location_rows((s.truth, s.rss) for s in samples))


def _read_locations(path, floor: float):
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file") from None
        n_ap = len(header) - 3
        if n_ap < 1 or header != _header(n_ap):
            raise CsvFormatError(
                f"{path}: line 1: malformed header, expected loc_id,x_ft,y_ft,ap_1,...,ap_N"
            )
        out = []
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise CsvFormatError(
                    f"{path}: line {line_no}: expected {len(header)} columns, got {len(row)}"
                )
            try:
                loc = Location(int(row[0]), float(row[1]), float(row[2]))
                readings = tuple(None if not c.strip() else float(c) for c in row[3:])
            except ValueError as exc:
                raise CsvFormatError(f"{path}: line {line_no}: non-numeric cell ({exc})") from None
            raw = RawRssVector(readings)
            try:
                vec = rss_to_amplitudes(raw, floor)
            except EncodingError as exc:
                raise CsvFormatError(f"{path}: line {line_no}: {exc}") from None
            out.append((loc, vec, raw))
    return n_ap, out


def load_fingerprints(path, floor: float = DEFAULT_FLOOR_DBM) -> FingerprintDb:
    n_ap, rows = _read_locations(path, floor)
    try:
        return FingerprintDb(n_ap, tuple(Fingerprint(loc, vec, raw) for loc, vec, raw in rows))
    except ValueError as exc:
        raise CsvFormatError(f"{path}: {exc}") from None


def load_samples(path, floor: float = DEFAULT_FLOOR_DBM) -> list[TestSample]:
    _, rows = _read_locations(path, floor)
    return [TestSample(loc, vec, raw) for loc, vec, raw in rows]


def save_table(header: Sequence[str], rows: Iterable[Sequence], path):
    _write(path, header, ([fmt(v) for v in row] for row in rows))
