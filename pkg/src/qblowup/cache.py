"""Content-addressed result cache.

Each entry is a JSON file named by the SHA-256 of its key.  The file stores
the key and the payload together with a checksum of the payload, so a
truncated or edited file is detected and treated as a miss.  Entries are
never modified in place; a new result is written to a temporary file and
renamed.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional

ENV_VAR = "QBLOWUP_CACHE_DIR"
FORMAT = 1


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "qblowup"


def canonical(obj) -> str:
    """Deterministic JSON text (sorted keys, no extra whitespace)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def key_digest(key: dict) -> str:
    return hashlib.sha256(canonical(key).encode()).hexdigest()


class ResultCache:
    def __init__(self, directory=None, enabled: bool = True):
        self.dir = Path(directory) if directory is not None else default_cache_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0
        self.corrupt = 0
        if enabled:
            self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, digest: str) -> Path:
        return self.dir / digest[:2] / f"{digest}.json"

    def get(self, key: dict) -> Optional[dict]:
        if not self.enabled:
            self.misses += 1
            return None
        digest = key_digest(key)
        path = self._path(digest)
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            ok = (entry.get("format") == FORMAT and entry.get("key") == key
                  and entry.get("checksum") == hashlib.sha256(canonical(payload).encode()).hexdigest())
        except FileNotFoundError:
            self.misses += 1
            return None
        except (OSError, ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            self.corrupt += 1
            self.misses += 1
            return None
        self.hits += 1
        return payload

    def put(self, key: dict, payload: dict) -> None:
        if not self.enabled:
            return
        digest = key_digest(key)
        path = self._path(digest)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"format": FORMAT, "key": key, "payload": payload,
                 "checksum": hashlib.sha256(canonical(payload).encode()).hexdigest()}
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical(entry))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def stats(self) -> dict:
        entries = list(self.dir.glob("*/*.json")) if self.dir.exists() else []
        size = sum(p.stat().st_size for p in entries)
        lookups = self.hits + self.misses
        return {"directory": str(self.dir), "entries": len(entries), "bytes": size, "hits": self.hits,
                "misses": self.misses, "corrupt": self.corrupt,
                "hit_rate": (self.hits / lookups) if lookups else None}
