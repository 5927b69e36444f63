"""Content-addressed on-disk cache for double-coset decompositions.

Entries are JSON files named by the SHA-256 of the canonical key.  Each file
repeats its key and a digest of the payload, so a hash collision or a
truncated write reads as a miss: the entry is dropped with a warning and the
caller recomputes.  Genuine I/O failures surface as :class:`CacheError`.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)

ENV_VAR = "CUSPLAB_CACHE"
FORMAT = 1


class CacheError(OSError):
    """The cache directory cannot be read or written."""


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=list)


def key_digest(key) -> str:
    return hashlib.sha256(_canonical([FORMAT, key]).encode()).hexdigest()


class DiskCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.hits = self.misses = self.rebuilt = 0
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise CacheError(f"cannot create cache directory {self.root}: {e}") from e

    @classmethod
    def from_env(cls, explicit: str | None = None) -> DiskCache | None:
        root = explicit or os.environ.get(ENV_VAR)
        return cls(root) if root else None

    def path(self, key) -> Path:
        d = key_digest(key)
        return self.root / d[:2] / f"{d}.json"

    def fetch(self, key):
        path = self.path(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            self.misses += 1
            return None
        except OSError as e:
            raise CacheError(f"cannot read {path}: {e}") from e
        try:
            entry = json.loads(text)
            payload = entry["payload"]
            ok = (entry["key"] == json.loads(_canonical(key))
                  and entry["digest"] == hashlib.sha256(_canonical(payload).encode()).hexdigest())
        except (ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            log.warning("corrupt cache entry %s; rebuilding", path)
            self.rebuilt += 1
            try:
                path.unlink()
            except OSError as e:
                raise CacheError(f"cannot remove corrupt entry {path}: {e}") from e
            return None
        self.hits += 1
        return payload

    def store(self, key, payload) -> None:
        path = self.path(key)
        entry = {
            "key": json.loads(_canonical(key)),
            "digest": hashlib.sha256(_canonical(payload).encode()).hexdigest(),
            "payload": payload,
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(_canonical(entry))
            os.replace(tmp, path)
        except OSError as e:
            raise CacheError(f"cannot write {path}: {e}") from e
