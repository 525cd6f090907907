"""Assessment persistence: a single-file append-log with compaction.

Each line is one JSON record, either {"op": "put", "record": {...}} or
{"op": "delete", "id": ...}. Replay on open rebuilds the live map; writes are
serialized through one lock; compaction rewrites the file with only live
records once dead entries pile up.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Protocol

COMPACT_MIN_OPS = 64
COMPACT_DEAD_RATIO = 0.5


class AssessmentStore(Protocol):
    def put(self, record: dict) -> None: ...
    def get(self, assessment_id: str) -> dict | None: ...
    def delete(self, assessment_id: str) -> bool: ...
    def ids(self) -> list[str]: ...


class MemoryStore:
    """Dict-backed store for tests and ephemeral runs."""

    def __init__(self):
        self._records: dict[str, dict] = {}
        self._lock = threading.Lock()

    def put(self, record: dict) -> None:
        with self._lock:
            self._records[record["assessment_id"]] = dict(record)

    def get(self, assessment_id: str) -> dict | None:
        record = self._records.get(assessment_id)
        return dict(record) if record is not None else None

    def delete(self, assessment_id: str) -> bool:
        with self._lock:
            return self._records.pop(assessment_id, None) is not None

    def ids(self) -> list[str]:
        return sorted(self._records)


class AppendLogStore:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: dict[str, dict] = {}
        self._ops = 0
        if self.path.exists():
            self._replay()
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.touch()

    def _replay(self) -> None:
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                entry = json.loads(line)
                self._ops += 1
                if entry["op"] == "put":
                    record = entry["record"]
                    self._records[record["assessment_id"]] = record
                elif entry["op"] == "delete":
                    self._records.pop(entry["id"], None)

    def _append(self, entry: dict) -> None:
        line = json.dumps(entry, sort_keys=True, separators=(",", ":")) + "\n"
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())
        self._ops += 1
        if self._ops >= COMPACT_MIN_OPS and len(self._records) < self._ops * (
            1 - COMPACT_DEAD_RATIO
        ):
            self._compact_locked()

    def put(self, record: dict) -> None:
        with self._lock:
            self._records[record["assessment_id"]] = dict(record)
            self._append({"op": "put", "record": record})

    def get(self, assessment_id: str) -> dict | None:
        record = self._records.get(assessment_id)
        return dict(record) if record is not None else None

    def delete(self, assessment_id: str) -> bool:
        with self._lock:
            if assessment_id not in self._records:
                return False
            del self._records[assessment_id]
            self._append({"op": "delete", "id": assessment_id})
            return True

    def compact(self) -> None:
        with self._lock:
            self._compact_locked()

    def _compact_locked(self) -> None:
        tmp = self.path.with_suffix(self.path.suffix + ".compacting")
        with tmp.open("w", encoding="utf-8") as fh:
            for aid in sorted(self._records):
                fh.write(
                    json.dumps(
                        {"op": "put", "record": self._records[aid]},
                        sort_keys=True,
                        separators=(",", ":"),
                    )
                    + "\n"
                )
            fh.flush()
            os.fsync(fh.fileno())
        tmp.replace(self.path)
        self._ops = len(self._records)

    def ids(self) -> list[str]:
        return sorted(self._records)
