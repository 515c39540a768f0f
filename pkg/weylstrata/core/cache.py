"""
Persistent reduction cache

Reduction records are stored as JSON lines, one record per (namespace,
canonical key). The namespace names the group and scope the record belongs
to. Worker processes keep an in-memory shard whose new lines are merged into
the main cache at the end of a sweep.
"""

import logging
import os
from typing import Dict, Iterable, List, Optional, Tuple

from weylstrata.algebra.affine_weyl import ElementKey
from weylstrata.algebra.dl_reduction import ReductionRecord
from weylstrata.utils.serialization import record_from_json, record_to_json

logger = logging.getLogger(__name__)


class ReductionCache:
    """
    JSON-lines cache of reduction records.

    Args:
        path: File to load from and flush to; None keeps the cache in memory
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._records: Dict[Tuple[str, ElementKey], ReductionRecord] = {}
        self._pending: List[str] = []
        self.hits = 0
        self.misses = 0
        self.loaded = 0
        if path:
            self.load()

    def load(self) -> int:
        """Load records from ``path``; returns the number of records read."""
        if not self.path or not os.path.exists(self.path):
            return 0
        count = 0
        with open(self.path, "r") as f:
            for number, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    namespace, record = record_from_json(line)
                except (ValueError, KeyError, TypeError) as e:
                    logger.warning(f"Skipping malformed cache line {number} in {self.path}: {e}")
                    continue
                self._records[(namespace, record.key)] = record
                count += 1
        self.loaded = count
        logger.info(f"Loaded {count} reduction records from {self.path}")
        return count

    def get(self, namespace: str, key: ElementKey) -> Optional[ReductionRecord]:
        record = self._records.get((namespace, key))
        if record is None:
            self.misses += 1
        else:
            self.hits += 1
            logger.debug(f"Cache hit for {key} in {namespace}")
        return record

    def put(self, namespace: str, record: ReductionRecord) -> None:
        if (namespace, record.key) in self._records:
            return
        self._records[(namespace, record.key)] = record
        self._pending.append(record_to_json(namespace, record))

    def pending_lines(self) -> List[str]:
        """Serialized records added since the last flush."""
        return list(self._pending)

    def merge(self, lines: Iterable[str]) -> int:
        """Merge serialized records from a worker shard; returns the number of new records."""
        added = 0
        for line in lines:
            namespace, record = record_from_json(line)
            if (namespace, record.key) not in self._records:
                self._records[(namespace, record.key)] = record
                self._pending.append(line)
                added += 1
        return added

    def flush(self) -> int:
        """Append pending records to ``path``; returns the number written."""
        if not self.path or not self._pending:
            written = 0
        else:
            directory = os.path.dirname(os.path.abspath(self.path))
            os.makedirs(directory, exist_ok=True)
            with open(self.path, "a") as f:
                for line in sorted(self._pending):
                    f.write(line + "\n")
            written = len(self._pending)
            logger.info(f"Wrote {written} reduction records to {self.path}")
        self._pending = []
        return written

    def __len__(self) -> int:
        return len(self._records)

    def stats(self) -> Dict[str, int]:
        return {"loaded": self.loaded, "hits": self.hits, "misses": self.misses, "stored": len(self._records)}
