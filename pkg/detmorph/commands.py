"""Subcommand registry and the argv parser behind it.

A subcommand declares its arguments once; the same `CommandSpec` drives parsing, the usage
line printed by `help`, and the usage echoed in input errors.
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .messages import err


Handler = Callable[[List[str]], Optional[int]]
ErrorSink = Callable[[str], None]


class _Abort(Exception):
    pass


@dataclass(frozen=True)
class Param:
    """One parsed slot: a positional when `flag` is None, otherwise a --flag."""

    name: str
    flag: Optional[str]
    convert: Callable[[str], Any]
    default: Any = None
    repeat: bool = False
    switch: bool = False

    @property
    def required(self) -> bool:
        return self.flag is None

    def initial(self) -> Any:
        if self.repeat:
            if self.default is None:
                return []
            return list(self.default) if isinstance(self.default, list) else [self.default]
        if self.switch:
            return bool(self.default)
        return self.default

    def usage(self) -> str:
        if self.required:
            return self.name.upper() + ("..." if self.repeat else "")
        if self.switch:
            return f"[{self.flag}]"
        return f"[{self.flag} {self.name.upper()}]"


def _is_optional(arg: Any, optional_types: Tuple[type, ...]) -> bool:
    if optional_types and isinstance(arg, optional_types):
        return True
    return getattr(arg, "default", None) is not None


@dataclass
class CommandSpec:
    name: str
    args: List[Any]
    params: List[Param] = field(default_factory=list)

    @classmethod
    def from_args(
        cls,
        name: str,
        args: Sequence[Any],
        converter_for: Callable[[type], Callable[[str], Any]],
        optional_types: Sequence[type] = (),
    ) -> "CommandSpec":
        kinds = tuple(optional_types)
        positional = [a for a in args if not _is_optional(a, kinds)]
        flagged = [a for a in args if _is_optional(a, kinds)]
        params = [Param(a.name, None, converter_for(getattr(a, "type", str)),
                        repeat=bool(getattr(a, "repeat", False)))
                  for a in positional]
        for o in flagged:
            tp = getattr(o, "type", str)
            params.append(Param(o.name, "--" + o.name.replace("_", "-"), converter_for(tp),
                                default=getattr(o, "default", None),
                                repeat=bool(getattr(o, "repeat", False)),
                                switch=tp is bool))
        return cls(name=name, args=list(args), params=params)

    def usage(self) -> str:
        return " ".join([self.name] + [p.usage() for p in self.params])

    def _tokens(self, argv: Sequence[str], fail: Callable[[str], None]
                ) -> Iterator[Tuple[Optional[Param], str]]:
        """Yield (flag param or None, raw value) pairs; switches yield an empty value."""
        by_flag = {p.flag: p for p in self.params if p.flag}
        pending = list(argv)
        while pending:
            tok = pending.pop(0)
            if not tok.startswith("--"):
                yield None, tok
                continue
            key, eq, val = tok.partition("=")
            param = by_flag.get(key)
            if param is None:
                fail(f"Unknown option: {key}")
            if param.switch:
                yield param, ""
            elif eq:
                yield param, val
            elif pending:
                yield param, pending.pop(0)
            else:
                fail(f"Option {key} requires a value")

    def parse(self, argv: Sequence[str], *, on_error: ErrorSink) -> Optional[Dict[str, Any]]:
        """Bind argv to the params; on a problem call on_error once and return None."""

        def fail(message: str):
            on_error(message)
            raise _Abort

        values: Dict[str, Any] = {p.name: p.initial() for p in self.params if not p.required}
        positional = [p for p in self.params if p.required]
        seen: set = set()
        cursor = 0

        def bind(param: Param, raw: str, label: str):
            try:
                value = param.convert(raw)
            except Exception:
                fail(f"Invalid value for {label}")
            if param.repeat:
                values.setdefault(param.name, []).append(value)
            else:
                values[param.name] = value
            seen.add(param.name)

        try:
            for param, raw in self._tokens(argv, fail):
                if param is not None and param.switch:
                    values[param.name] = True
                elif param is not None:
                    bind(param, raw, param.flag)
                else:
                    if cursor >= len(positional):
                        fail("Too many positional arguments")
                    slot = positional[cursor]
                    bind(slot, raw, slot.name)
                    cursor += 0 if slot.repeat else 1
            missing = [p.name for p in positional if p.name not in seen]
            if missing:
                fail(f"Missing: {' '.join(missing)}")
        except _Abort:
            return None
        return values


@dataclass
class CommandEntry:
    handler: Handler
    help_text: str
    spec: CommandSpec


class CommandRegistry:
    def __init__(self):
        self._entries: Dict[str, CommandEntry] = {}

    def register(self, name: str, fn: Handler, help_text: str, spec: CommandSpec):
        self._entries[name] = CommandEntry(fn, help_text, spec)

    def items(self):
        return self._entries.items()

    def names(self) -> List[str]:
        return sorted(self._entries)

    def resolve(self, name: str) -> Optional[CommandEntry]:
        return self._entries.get(name)


def dispatch(registry: CommandRegistry, cmd: Union[str, Sequence[str]], *,
             on_error: Optional[ErrorSink] = None) -> Optional[int]:
    """Run one command line (a string or an argv list); returns the handler's exit code."""
    report = on_error or err
    if isinstance(cmd, str):
        try:
            cmd = shlex.split(cmd.strip())
        except ValueError as exc:
            report(f"Parse error: {exc}")
            return None
    if not cmd:
        return None
    name, *argv = cmd
    entry = registry.resolve(name)
    if entry is None:
        report(f"Unknown: {name}")
        return None
    return entry.handler(list(argv))
