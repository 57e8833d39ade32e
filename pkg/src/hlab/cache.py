"""On-disk cache for character tables and Hurwitz tables.

Each entry is one JSON file::

    {"kind": ..., "key": ..., "schema_version": ..., "payload": ..., "checksum": ...}

``checksum`` is the SHA-256 of the canonical JSON encoding of ``payload``
(sorted keys, no whitespace).  Entries with a different schema version or a
bad checksum are ignored and recomputed.  Writes go to a temporary file in the
same directory followed by ``os.replace``, so readers never see partial files.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Callable

SCHEMA_VERSION = 1
ENV_VAR = "HLAB_CACHE_DIR"
DEFAULT_DIR = ".hlab-cache"
KINDS = ("chars", "hurwitz-disc", "hurwitz-conn")


def cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, DEFAULT_DIR))


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def checksum(payload) -> str:
    return hashlib.sha256(canonical(payload).encode()).hexdigest()


def _path(kind: str, key: str) -> Path:
    if kind not in KINDS:
        raise ValueError(f"unknown cache kind {kind!r}")
    return cache_dir() / f"{kind}-{key}.json"


def load(kind: str, key: str):
    """Return the cached payload, or None if missing, stale or corrupt."""
    path = _path(kind, key)
    try:
        entry = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if (
        entry.get("schema_version") != SCHEMA_VERSION
        or entry.get("kind") != kind
        or entry.get("key") != key
        or entry.get("checksum") != checksum(entry.get("payload"))
    ):
        return None
    return entry["payload"]


def store(kind: str, key: str, payload) -> Path:
    path = _path(kind, key)
    path.parent.mkdir(parents=True, exist_ok=True)
    entry = {
        "kind": kind,
        "key": key,
        "schema_version": SCHEMA_VERSION,
        "payload": payload,
        "checksum": checksum(payload),
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(canonical(entry))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cached(kind: str, key: str, compute: Callable[[], object]):
    payload = load(kind, key)
    if payload is None:
        payload = compute()
        # round-trip through JSON so cold and warm results are identical objects
        payload = json.loads(canonical(payload))
        store(kind, key, payload)
    return payload
