from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO
import inspect
import pathlib
import sys

from . import messages
from .commands import CommandRegistry, CommandSpec, dispatch
from .config import DEFAULT_LIMITS, Limits
from .errors import CounterexampleFound, DetmorphError, InputError
from .instance import Instance, load_instance
from .report import ReportRecorder
from .theme import GRAY
from .ui import Markdown, descriptors_to_elements, render_elements


@dataclass
class Arg:
    name: str
    type: type = str
    default: Any = None
    repeat: bool = False


@dataclass
class Opt(Arg):
    """A --flag argument; bool options are switches."""


def _converter_for(tp: type) -> Callable[[str], Any]:
    if tp is int:
        return int
    if tp is bool:
        return lambda raw: raw.lower() not in ("0", "false", "no", "")
    if tp is pathlib.Path:
        return pathlib.Path
    return str


@dataclass
class Settings:
    """Global flags; accepted anywhere on the command line."""

    field: Optional[int] = None
    bound: Optional[int] = None
    limit: Optional[int] = None
    seed: Optional[int] = None
    tsv: bool = False
    quiet: bool = False
    timing: bool = False
    base_limits: Limits = DEFAULT_LIMITS

    def limits(self) -> Limits:
        return self.base_limits.with_overrides(enumeration_limit=self.limit, seed=self.seed)


_VALUE_FLAGS = {"--field": "field", "--bound": "bound", "--limit": "limit", "--seed": "seed"}
_SWITCHES = {"--tsv": "tsv", "--quiet": "quiet", "--timing": "timing"}


def split_global_flags(argv: Sequence[str]) -> tuple[Settings, List[str]]:
    settings = Settings()
    rest: List[str] = []
    i = 0
    while i < len(argv):
        key, eq, val = argv[i].partition("=")
        if key in _SWITCHES:
            setattr(settings, _SWITCHES[key], True)
        elif key in _VALUE_FLAGS:
            if not eq:
                if i + 1 >= len(argv):
                    raise InputError(f"Option {key} requires a value")
                i += 1
                val = argv[i]
            try:
                setattr(settings, _VALUE_FLAGS[key], int(val))
            except ValueError:
                raise InputError(f"Invalid value for {key}") from None
        else:
            rest.append(argv[i])
        i += 1
    return settings, rest


class App:
    def __init__(self, id: str, title: Optional[str] = None,
                 stdout: Optional[TextIO] = None, stdin: Optional[TextIO] = None):
        self.id = id
        self.title = title
        self.state: Dict[str, Any] = {}
        self.registry = CommandRegistry()
        self.settings = Settings()
        self.report: Optional[ReportRecorder] = None
        self._stdout = stdout
        self._stdin = stdin

    @property
    def console(self):
        return messages.console()

    @property
    def stdout(self) -> TextIO:
        return self._stdout or sys.stdout

    # Output helpers
    def _message(self, markup: str, *, quiet_ok: bool = True):
        if quiet_ok and self.settings.quiet:
            return
        self.enqueue_ui({"k": "text", "t": markup})

    def info(self, t: str):
        self._message(f"[{GRAY}]{t}[/{GRAY}]")

    def ok(self, t: str):
        self._message(f"[green]✓ {t}[/green]")

    def warn(self, t: str):
        if self.report is not None:
            self.report.record_warning(t)
        self._message(f"[yellow]⚠ {t}[/yellow]", quiet_ok=False)

    def err(self, t: str):
        self._message(f"[red]Error: {t}[/red]", quiet_ok=False)

    def _queue(self):
        return self.state.setdefault("__print_queue__", [])

    def enqueue_ui(self, desc: Dict[str, Any]):
        self._queue().append(desc)

    def markdown(self, text: str):
        if not self.settings.quiet:
            self.enqueue_ui({"k": "md", "t": text})

    def table(self, title: str, rows: List[Dict[str, Any]], columns: List[str] | None = None):
        if not self.settings.quiet:
            self.enqueue_ui({"k": "table", "title": title, "rows": rows or [], "cols": columns})

    def _render(self):
        q = list(self.state.get("__print_queue__", []))
        if q:
            self.state["__print_queue__"] = []
            render_elements(self.console, descriptors_to_elements(q))

    # Reports
    def load(self, source: pathlib.Path) -> Instance:
        """Read an instance from a path ('-' for stdin) and record its digest and limits."""
        if str(source) == "-":
            text = (self._stdin or sys.stdin).read()
        else:
            try:
                text = pathlib.Path(source).read_text(encoding="utf-8")
            except OSError as exc:
                raise InputError(f"cannot read {source}: {exc.strerror}") from None
        limits = self.settings.limits()
        inst = load_instance(text, self.settings.field, limits)
        if self.report is not None:
            self.report.record_instance(inst.digest(), inst.kind, inst.p)
            self.report.record_bounds(limits=limits.to_json(), L=self.settings.bound)
        if inst.empty:
            self.info("loaded an empty instance")
        else:
            self.info(f"loaded {inst.kind} instance over F_{inst.p} "
                      f"({len(inst.objects)} objects, {len(inst.morphisms)} morphisms)")
        return inst

    def emit(self, results: Any, rows: Optional[List[Dict[str, Any]]] = None,
             columns: Optional[List[str]] = None):
        if self.report is None:
            return
        self.report.record_results(results)
        if rows is not None:
            self.report.record_rows(rows, columns)

    # Decorators
    def command(self, name: str, args: List[Arg | Opt]):
        def deco(fn: Callable):
            spec = CommandSpec.from_args(name, args, _converter_for, optional_types=(Opt,))

            def usage_error(message: str):
                raise InputError(f"{message} (usage: {spec.usage()})")

            def handler(argv: List[str]) -> Optional[int]:
                values = spec.parse(argv, on_error=usage_error)
                kwargs = {p.name: values.get(p.name)
                          for p in inspect.signature(fn).parameters.values()}
                return fn(**kwargs)

            help_text = (inspect.getdoc(fn) or "").strip()
            self.registry.register(name, handler, help_text, spec)
            return fn

        return deco

    def print_help(self):
        lines = [f"**{self.title or self.id}**", ""]
        for name, entry in sorted(self.registry.items()):
            summary = entry.help_text.splitlines()[0] if entry.help_text else ""
            lines.append(f"- `{entry.spec.usage()}` {summary}")
        lines += ["", "Global flags: --field P, --bound L, --limit N, --seed S, "
                      "--tsv, --quiet, --timing"]
        render_elements(self.console, Markdown("\n".join(lines)))

    def run(self, argv: Sequence[str]) -> int:
        """Run one command; the report goes to stdout, the exit code is returned."""
        try:
            self.settings, rest = split_global_flags(list(argv))
        except InputError as exc:
            messages.err(str(exc))
            return exc.exit_code
        messages.set_quiet(self.settings.quiet)
        if not rest or rest[0] in ("help", "--help", "-h"):
            self.print_help()
            return 0 if rest else InputError.exit_code

        self.report = ReportRecorder(argv, timing=self.settings.timing)
        code = 0
        try:
            result = dispatch(self.registry, rest, on_error=self._unknown_command)
            code = int(result or 0)
            if code == CounterexampleFound.exit_code:
                self.report.status = "counterexample"
        except DetmorphError as exc:
            self.err(str(exc))
            status = "counterexample" if isinstance(exc, CounterexampleFound) else exc.kind
            self.report.record_error(exc.to_json(), status)
            code = exc.exit_code
        fmt = "tsv" if self.settings.tsv else "json"
        self.report.write(self.stdout, fmt)
        self.info(f"{rest[0]} finished in {self.report.elapsed:.3f}s (exit {code})")
        self._render()
        self.report = None
        return code

    def _unknown_command(self, message: str):
        raise InputError(f"{message}; try 'help'")
