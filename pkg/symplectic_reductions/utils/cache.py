"""
Result Cache

Versioned JSON key-value store for integer results of the representation-theory
computations. The cache is read if present and written through on every new
result; it only ever speeds things up.
"""

import json
import logging
import threading
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence

logger = logging.getLogger(__name__)


class ResultCache:
    """
    Thread-safe cache mapping ``operation:arguments`` keys to integers.

    Lookups and writes share one lock so the hit and miss counters stay exact;
    writes also rewrite the backing file. A file written with another format version is ignored.
    """

    VERSION = 1

    def __init__(self, path: Optional[str] = None):
        """
        Initialize the cache.

        Args:
            path (str, optional): Backing JSON file. In-memory only when omitted.
        """
        self.path = Path(path) if path else None
        self._lock = threading.Lock()
        self._entries: Dict[str, int] = self._load()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def make_key(operation: str, arguments: Sequence[Any]) -> str:
        """Canonical key for an operation and its (JSON-serializable) arguments."""
        return f"{operation}:{json.dumps(list(arguments), separators=(',', ':'), sort_keys=True)}"

    def _load(self) -> Dict[str, int]:
        if self.path is None or not self.path.exists():
            return {}
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                document = json.load(f)
        except (json.JSONDecodeError, OSError) as e:
            logger.warning("Ignoring unreadable cache file %s: %s", self.path, e)
            return {}
        if not isinstance(document, dict) or document.get("version") != self.VERSION:
            logger.warning("Discarding cache file %s with unsupported version", self.path)
            return {}
        entries = document.get("entries", {})
        logger.debug("Loaded %d cached results from %s", len(entries), self.path)
        return {str(k): int(v) for k, v in entries.items()}

    def _save(self):
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "w", encoding="utf-8") as f:
            json.dump({"version": self.VERSION, "entries": self._entries}, f, indent=2, sort_keys=True)

    def get(self, key: str) -> Optional[int]:
        with self._lock:
            value = self._entries.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
        return value

    def put(self, key: str, value: int):
        with self._lock:
            self._entries = {**self._entries, key: int(value)}
            try:
                self._save()
            except OSError as e:
                logger.warning("Could not write cache file %s: %s", self.path, e)

    def get_or_compute(self, operation: str, arguments: Sequence[Any], compute: Callable[[], int]) -> int:
        """
        Return the cached value for (operation, arguments), computing it on a miss.

        Args:
            operation: Operation name
            arguments: Canonical arguments
            compute: Zero-argument callable producing the value

        Returns:
            int: The result
        """
        key = self.make_key(operation, arguments)
        cached = self.get(key)
        if cached is not None:
            logger.debug("Cache hit %s", key)
            return cached
        value = int(compute())
        self.put(key, value)
        return value

    def __len__(self) -> int:
        return len(self._entries)

    def get_cache_info(self) -> Dict[str, Any]:
        return {
            "path": str(self.path) if self.path else None,
            "entries": len(self._entries),
            "hits": self.hits,
            "misses": self.misses,
            "version": self.VERSION,
        }
