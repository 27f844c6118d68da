"""Stable short digests of configuration objects.

Fingerprints are embedded in token streams and run summaries so that any
report can be traced back to the exact configuration that produced it.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json


def _jsonable(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(str(v) for v in value)
    if hasattr(value, "value") and not isinstance(value, (int, float, str, bool)):
        return value.value  # enum members
    return value


def fingerprint(obj) -> str:
    """Return a 12-hex-digit digest of a dataclass or plain mapping.

    The digest is stable across processes and runs: fields are serialized
    to canonical JSON (sorted keys) before hashing.
    """
    payload = json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]
