from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from dataclasses import dataclass, field
from typing import Dict, Hashable, Optional, Tuple

from .series import CoefficientRing, Series

_logger = logging.getLogger(__name__)


@dataclass(eq=False)
class SeriesMemo:
    """In-process memo of computed series, keyed by (key, ring).

    Only the highest-order result per key is kept; shorter requests are
    answered by truncation, which never changes a result.
    """

    _store: Dict[Tuple[Hashable, CoefficientRing], Series] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def get(self, key: Hashable, order: int, ring: CoefficientRing) -> Optional[Series]:
        with self._lock:
            found = self._store.get((key, ring))
        if found is None or found.order < order:
            return None
        return found.truncate(order)

    def put(self, key: Hashable, series: Series) -> None:
        with self._lock:
            current = self._store.get((key, series.ring))
            if current is None or current.order < series.order:
                self._store[(key, series.ring)] = series

    def clear(self) -> None:
        with self._lock:
            self._store.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._store)


def _safe_cache_dir(path_str: Optional[str]) -> Optional[str]:
    if not path_str:
        return None
    path = os.path.abspath(os.path.expanduser(path_str))
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        _logger.debug("cache directory %s unusable: %s", path, exc)
        return None
    return path


class SeriesCache:
    """On-disk cache of serialized series, one JSON file per key.

    Advisory only: a missing, unreadable or stale file is a miss, and write
    failures are ignored. File names are hashes of the key, which embeds
    the engine version.
    """

    def __init__(self, directory: Optional[str], engine_version: str, enabled: bool = True) -> None:
        self.engine_version = engine_version
        self.directory = _safe_cache_dir(directory) if enabled else None

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def key(self, source: str, order: int, ring: CoefficientRing, **params: object) -> str:
        extras = ",".join(f"{k}={params[k]}" for k in sorted(params))
        return f"{self.engine_version}|{source}|{extras}|N={order}|{ring.label}"

    def _path(self, key: str) -> str:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()[:32]
        return os.path.join(self.directory or "", f"{digest}.json")

    def load(self, key: str) -> Optional[Series]:
        if not self.enabled:
            return None
        path = self._path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
            if data.get("key") != key:
                return None
            return Series.from_json(data["series"])
        except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
            _logger.debug("ignoring unreadable cache file %s: %s", path, exc)
            return None

    def store(self, key: str, series: Series) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        tmp = f"{path}.{os.getpid()}.{threading.get_ident()}.tmp"
        try:
            with open(tmp, "w", encoding="utf-8") as f:
                json.dump({"key": key, "series": series.to_json()}, f)
            os.replace(tmp, path)
        except OSError as exc:
            _logger.debug("cache write to %s failed: %s", path, exc)
