"""Content-addressed on-disk cache for character tables and spectrum reports.

Files are ``{fingerprint}-{kind}.json``.  The fingerprint hashes cheap
invariants; every entry also stores the full table hash, and any mismatch,
version change or unreadable file counts as a miss.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from collections import Counter
from pathlib import Path

from .characters import CharacterTable, character_table, install_table
from .groups import FiniteGroup, abelian_invariants

CACHE_VERSION = 1
CACHE_ENV = "TORSION_OBSTRUCT_CACHE"

log = logging.getLogger(__name__)


def fingerprint(g: FiniteGroup) -> str:
    data = {
        "order": g.order,
        "element_orders": sorted(Counter(g.element_orders).items()),
        "class_sizes": sorted(g.conjugacy.class_sizes),
        "abelianization": abelian_invariants(g),
        "table": g.table_hash,
    }
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()[:32]


class Cache:
    """A cache directory; disabled (every lookup misses) when ``directory`` is None or unwritable."""

    def __init__(self, directory: str | Path | None) -> None:
        self.directory: Path | None = None
        if directory is None:
            return
        path = Path(directory)
        try:
            path.mkdir(parents=True, exist_ok=True)
            probe = tempfile.NamedTemporaryFile(dir=path, delete=True)
            probe.close()
        except OSError as exc:
            log.warning("cache directory %s is not writable (%s); caching disabled", path, exc)
            return
        self.directory = path

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def _path(self, g: FiniteGroup, kind: str) -> Path:
        return self.directory / f"{fingerprint(g)}-{kind}.json"

    def get(self, g: FiniteGroup, kind: str) -> dict | None:
        if not self.enabled:
            return None
        path = self._path(g, kind)
        try:
            entry = json.loads(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache entry %s (%s)", path, exc)
            return None
        if not isinstance(entry, dict):
            return None
        if entry.get("version") != CACHE_VERSION or entry.get("kind") != kind:
            return None
        if entry.get("table_hash") != g.table_hash:
            return None
        return entry.get("payload")

    def put(self, g: FiniteGroup, kind: str, payload: dict) -> None:
        if not self.enabled:
            return
        entry = {
            "version": CACHE_VERSION,
            "kind": kind,
            "fingerprint": fingerprint(g),
            "table_hash": g.table_hash,
            "payload": payload,
        }
        path = self._path(g, kind)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s (%s)", path, exc)


def cached_character_table(g: FiniteGroup, cache: Cache | None, cap: int | None = None) -> CharacterTable:
    if cache is not None:
        data = cache.get(g, "character-table")
        if data is not None:
            try:
                tab = CharacterTable.from_json(g, data)
                if len(tab.rows) != len(g.conjugacy) or sum(d * d for d in tab.degrees) != g.order:
                    raise ValueError("inconsistent degrees")
            except (KeyError, ValueError, TypeError) as exc:
                log.warning("discarding cached table for %s (%s)", g.name, exc)
            else:
                install_table(g, tab)
                return tab
    tab = character_table(g, cap)
    if cache is not None:
        cache.put(g, "character-table", tab.to_json())
    return tab
