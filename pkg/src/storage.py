"""
Storage Module

Append-only JSON-lines resume cache for sweeps, and report output through pandas.
"""

import json
import os
import threading
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import pandas as pd

from src.monitoring import log_event


class ResultCache:
    """
    One JSON object per line, keyed by its "graph6" field. Each append is
    flushed and fsync'ed before returning; a half-written trailing line from a
    killed run is skipped on load. A cache file belongs to one sweep setup.
    """

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()
        self._handle = None

    def load(self) -> Dict[str, Dict[str, Any]]:
        records: Dict[str, Dict[str, Any]] = {}
        if not os.path.exists(self.path):
            return records
        with open(self.path, "r", encoding="utf-8") as f:
            lines = f.read().split("\n")
        for number, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                log_event("storage_cache_truncated_line", {"path": self.path, "line": number})
                continue
            records[record["graph6"]] = record
        log_event("storage_cache_loaded", {"path": self.path, "records": len(records)})
        return records

    def open(self) -> None:
        directory = os.path.dirname(self.path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self._handle = open(self.path, "a+", encoding="utf-8")
        # a killed writer may have left the last line without its newline
        self._handle.seek(0, os.SEEK_END)
        if self._handle.tell():
            self._handle.seek(self._handle.tell() - 1)
            if self._handle.read(1) != "\n":
                self._handle.write("\n")

    def append(self, record: Dict[str, Any]) -> None:
        if self._handle is None:
            raise RuntimeError("cache is not open")
        line = json.dumps(record, sort_keys=True)
        with self._lock:
            self._handle.write(line + "\n")
            self._handle.flush()
            os.fsync(self._handle.fileno())

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None


@contextmanager
def open_cache(path: Optional[str]) -> Iterator[Optional[ResultCache]]:
    """Yields an open ResultCache for path, or None when no resume file was asked for."""
    if path is None:
        yield None
        return
    cache = ResultCache(path)
    cache.open()
    try:
        yield cache
    finally:
        cache.close()


def write_df(df: pd.DataFrame, path: Optional[str] = None) -> str:
    """Writes df as CSV to path (returned as text when path is None)."""
    if df.empty:
        log_event("storage_empty_frame", {"path": path})
    text = df.to_csv(index=False)
    if path is not None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return text


def read_df(path: str) -> pd.DataFrame:
    """Reads a JSON-lines file (e.g. a resume cache) into a DataFrame."""
    if not os.path.exists(path) or not os.path.getsize(path):
        return pd.DataFrame()
    rows: List[Dict[str, Any]] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError:
                continue
    return pd.json_normalize(rows)


def write_report(report: Dict[str, Any], path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2, sort_keys=True)
    log_event("storage_report_written", {"path": path})
