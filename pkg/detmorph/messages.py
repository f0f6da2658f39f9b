from rich.console import Console
from .theme import GRAY

# stdout carries the report; everything for humans goes to stderr
_console = Console(stderr=True)
_quiet = False


def console() -> Console:
    return _console


def set_quiet(flag: bool) -> None:
    global _quiet
    _quiet = bool(flag)


def is_quiet() -> bool:
    return _quiet


def info(t):
    if not _quiet:
        _console.print(f"[{GRAY}]{t}[/{GRAY}]")


def ok(t):
    if not _quiet:
        _console.print(f"[green]✓ {t}[/green]")


def warn(t): _console.print(f"[yellow]⚠ {t}[/yellow]")
def err(t):  _console.print(f"[red]Error: {t}[/red]")
