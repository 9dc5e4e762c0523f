"""Content-addressed on-disk cache for exact coefficient tables.

Entries are JSON files named by the SHA-256 of their key and carry a
checksum of the payload; a mismatch is treated as a miss.  Writes go to a
temporary file in the same directory and are renamed into place.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .series import Poly, Ring, TruncatedSeries

ENV_VAR = "BLOCKMAP_CACHE"
FORMAT_VERSION = 1


def default_directory() -> Path:
    return Path(os.environ.get(ENV_VAR, ".cache"))


def _encode_value(value):
    if isinstance(value, Poly):
        return {"vars": list(value.variables),
                "terms": sorted([list(e), str(c)] for e, c in value.terms.items())}
    if isinstance(value, Fraction):
        return {"frac": [str(value.numerator), str(value.denominator)]}
    return str(value)


def _decode_value(data):
    if isinstance(data, dict) and "vars" in data:
        return Poly({tuple(e): int(c) for e, c in data["terms"]}, tuple(data["vars"]))
    if isinstance(data, dict):
        num, den = data["frac"]
        return Fraction(int(num), int(den))
    return int(data)


def encode_series(series: TruncatedSeries) -> dict:
    return {"ring": series.ring.value, "order": series.order,
            "coefficients": [_encode_value(c) for c in series]}


def decode_series(data: dict) -> TruncatedSeries:
    return TruncatedSeries([_decode_value(c) for c in data["coefficients"]], data["order"],
                           Ring(data["ring"]))


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class SeriesCache:
    """Cache of :class:`TruncatedSeries` keyed by ``(model, N, ring, kind)``."""

    def __init__(self, directory: str | os.PathLike | None = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_directory()
        self.enabled = enabled

    def _path(self, key: dict) -> Path:
        digest = hashlib.sha256(_dumps({"v": FORMAT_VERSION, **key}).encode()).hexdigest()
        return self.directory / f"{digest[:40]}.json"

    def load(self, key: dict) -> TruncatedSeries | None:
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        payload = record.get("payload")
        if record.get("key") != key or hashlib.sha256(_dumps(payload).encode()).hexdigest() != record.get("checksum"):
            return None
        return decode_series(payload)

    def store(self, key: dict, series: TruncatedSeries) -> Path | None:
        if not self.enabled:
            return None
        payload = encode_series(series)
        record = {"key": key, "payload": payload,
                  "checksum": hashlib.sha256(_dumps(payload).encode()).hexdigest()}
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(_dumps(record))
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def get_or_compute(self, key: dict, compute) -> TruncatedSeries:
        cached = self.load(key)
        if cached is not None:
            return cached
        series = compute()
        self.store(key, series)
        return series


NO_CACHE = SeriesCache(enabled=False)
