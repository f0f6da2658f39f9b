from __future__ import annotations

import json
import time
from typing import Any, Dict, List, Optional, Sequence, TextIO

from . import __version__


def canonical_json(payload: Any) -> str:
    """Sorted keys, two-space indent, trailing newline: byte-identical for equal payloads."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _tsv_cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value).replace("\t", " ").replace("\n", " ")


def tsv(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    if not rows:
        return ""
    cols = columns or list(rows[0].keys())
    lines = ["\t".join(cols)]
    lines += ["\t".join(_tsv_cell(row.get(c, "")) for c in cols) for row in rows]
    return "\n".join(lines) + "\n"


class ReportRecorder:
    """Collects one command's report: echo, instance digest, bounds, results, warnings."""

    def __init__(self, command: Sequence[str], *, timing: bool = False):
        self.command = list(command)
        self.timing = timing
        self.instance: Optional[Dict[str, Any]] = None
        self.bounds: Dict[str, Any] = {}
        self.results: Any = None
        self.warnings: List[str] = []
        self.rows: List[Dict[str, Any]] = []
        self.row_columns: Optional[List[str]] = None
        self.error: Optional[Dict[str, Any]] = None
        self.status = "pass"
        self._start = time.perf_counter()

    def record_instance(self, digest: str, kind: Optional[str], p: Optional[int]) -> None:
        self.instance = {"sha256": digest, "kind": kind, "field": p}

    def record_bounds(self, **values: Any) -> None:
        self.bounds.update({k: v for k, v in values.items() if v is not None})

    def record_results(self, payload: Any) -> None:
        self.results = payload

    def record_warning(self, text: str) -> None:
        if text not in self.warnings:
            self.warnings.append(text)

    def record_rows(self, rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> None:
        """Flat rows for --tsv output."""
        self.rows = rows
        self.row_columns = columns

    def record_error(self, payload: Dict[str, Any], status: str) -> None:
        self.error = payload
        self.status = status

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._start

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "artifact": {"name": "detmorph", "version": __version__},
            "command": self.command,
            "status": self.status,
        }
        if self.instance is not None:
            out["instance"] = self.instance
        if self.bounds:
            out["bounds"] = self.bounds
        if self.error is not None:
            out["error"] = self.error
        else:
            out["results"] = self.results
        out["warnings"] = list(self.warnings)
        if self.timing:
            out["wall_clock_seconds"] = round(self.elapsed, 3)
        return out

    def render(self, fmt: str = "json") -> str:
        if fmt == "tsv" and self.error is None:
            return tsv(self.rows, self.row_columns)
        return canonical_json(self.to_json())

    def write(self, stream: TextIO, fmt: str = "json") -> None:
        stream.write(self.render(fmt))
        stream.flush()
