"""Append-only cache of T(I) keyed by canonical ideal string.

One JSON object per line: ``{"ideal": ..., "T": ..., "version": ...}``.
Entries written by a different oracle version are ignored.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

ORACLE_VERSION = "syzygy-graph-1"
CACHE_ENV = "HILBSING_CACHE"

log = logging.getLogger(__name__)


def default_path() -> Path | None:
    p = os.environ.get(CACHE_ENV)
    return Path(p) if p else None


class TangentCache:
    def __init__(self, path: Path | str | None):
        self.path = Path(path) if path is not None else None
        self.values: dict[str, int] = {}
        self.hits = 0
        self._pending: list[tuple[str, int]] = []
        if self.path is not None and self.path.exists():
            with self.path.open() as fh:
                for n, line in enumerate(fh, 1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                    except json.JSONDecodeError:
                        log.warning("%s:%d: unreadable cache line skipped", self.path, n)
                        continue
                    if rec.get("version") == ORACLE_VERSION:
                        self.values[rec["ideal"]] = int(rec["T"])

    def get(self, ideal: str) -> int | None:
        v = self.values.get(ideal)
        if v is not None:
            self.hits += 1
        return v

    def put(self, ideal: str, T: int) -> None:
        if ideal in self.values:
            return
        self.values[ideal] = T
        self._pending.append((ideal, T))

    def flush(self) -> None:
        if self.path is None or not self._pending:
            self._pending.clear()
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            for ideal, T in self._pending:
                fh.write(json.dumps({"ideal": ideal, "T": T, "version": ORACLE_VERSION}) + "\n")
        self._pending.clear()
