from __future__ import annotations

from typing import Any, Dict, Optional


class DetmorphError(Exception):
    """Base class; `exit_code` is what the CLI returns when this escapes a command."""

    exit_code = 2
    kind = "error"

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "message": str(self)}


class InputError(DetmorphError):
    exit_code = 2
    kind = "input"

    def __init__(self, message: str, *, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class DimensionMismatch(InputError, ValueError):
    kind = "dimension"


class FieldMismatch(InputError, ValueError):
    kind = "field"


class StructureError(InputError, ValueError):
    """A value violates its structural invariant (commuting squares, nilpotency, acyclicity)."""

    kind = "structure"


class NotApplicable(InputError):
    kind = "not-applicable"


class UnknownName(InputError, KeyError):
    kind = "unknown-name"

    def __str__(self) -> str:
        return Exception.__str__(self)


class LimitExceeded(DetmorphError):
    exit_code = 3
    kind = "limit"


class Inconclusive(LimitExceeded):
    kind = "inconclusive"


class CounterexampleFound(DetmorphError):
    exit_code = 1
    kind = "counterexample"

    def __init__(self, message: str, payload: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.payload = payload or {}

    def to_json(self) -> Dict[str, Any]:
        out = super().to_json()
        out["counterexample"] = self.payload
        return out
