"""Canonical JSON encoding for certificates: sorted keys, two-space indent,
trailing newline, so equal data always serializes to identical bytes."""

from __future__ import annotations

import json
from pathlib import Path


def canonical_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_certificate(path, data) -> None:
    Path(path).write_text(canonical_json(data))


def read_certificate(path) -> dict:
    return json.loads(Path(path).read_text())
