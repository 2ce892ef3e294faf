"""On-disk cache of computed payloads, keyed by the canonical request."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

log = logging.getLogger(__name__)

CACHE_VERSION = 1


class CacheMismatch(RuntimeError):
    """A cached payload disagrees with a fresh recomputation."""


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def request_hash(request: dict) -> str:
    return hashlib.sha256(canonical(request).encode()).hexdigest()


class Cache:
    def __init__(self, directory: str | os.PathLike | None, version: int = CACHE_VERSION):
        self.version = version
        self.directory = None
        if directory is None:
            return
        path = Path(directory)
        try:
            path.mkdir(parents=True, exist_ok=True)
            probe = tempfile.NamedTemporaryFile(dir=path, delete=True)
            probe.close()
        except OSError as exc:
            log.warning("cache directory %s is not writable (%s); continuing uncached",
                        path, exc)
            return
        self.directory = path

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def path_for(self, request: dict) -> Path:
        return self.directory / f"{request_hash(request)}.json"

    def load(self, request: dict):
        if not self.enabled:
            return None
        path = self.path_for(request)
        try:
            entry = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if entry.get("version") != self.version or entry.get("request") != request:
            return None
        return entry.get("payload")

    def store(self, request: dict, payload):
        if not self.enabled:
            return
        entry = canonical({"version": self.version, "request": request, "payload": payload})
        path = self.path_for(request)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(entry)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s (%s)", path, exc)

    def get_or_compute(self, request: dict, compute: Callable[[], object], verify: bool = False):
        cached = self.load(request)
        if cached is not None and not verify:
            return cached
        payload = json.loads(canonical(compute()))
        if cached is not None and canonical(cached) != canonical(payload):
            raise CacheMismatch(f"cache entry {self.path_for(request).name} disagrees with "
                                "a fresh computation")
        if cached is None:
            self.store(request, payload)
        return payload
