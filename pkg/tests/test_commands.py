from typing import Any, Dict, List

import pytest

from detmorph.app import App, Arg, Opt
from detmorph.commands import CommandRegistry, CommandSpec, dispatch
from detmorph.errors import InputError


def make_app() -> App:
    return App("test_app")


def test_command_registers_spec_and_usage():
    app = make_app()

    @app.command("hom", args=[Arg("instance"), Arg("x"), Arg("y"), Opt("left", bool, default=False)])
    def hom(instance: str, x: str, y: str, left: bool = False):
        """Hom space."""
        return 0

    entry = app.registry.resolve("hom")
    assert entry is not None
    assert [a.name for a in entry.spec.args] == ["instance", "x", "y", "left"]
    assert entry.spec.usage() == "hom INSTANCE X Y [--left]"
    assert entry.help_text == "Hom space."


def test_parse_required_and_optional_flags_with_equals_and_space():
    app = make_app()

    calls: List[Dict[str, Any]] = []

    @app.command("table", args=[Arg("name", str), Opt("bound", int, default=1)])
    def table(name: str, bound: int = 1):
        calls.append({"name": name, "bound": bound})
        return 0

    entry = app.registry.resolve("table")
    assert entry is not None
    handler = entry.handler

    handler(["J1", "--bound", "3"])  # space form
    handler(["J2", "--bound=5"])     # equals form
    handler(["J3"])                  # default

    assert calls == [
        {"name": "J1", "bound": 3},
        {"name": "J2", "bound": 5},
        {"name": "J3", "bound": 1},
    ]


def test_switch_and_repeated_option():
    app = make_app()
    seen: Dict[str, Any] = {}

    @app.command("represent", args=[Arg("c"), Opt("gen", str, repeat=True), Opt("left", bool, default=False)])
    def represent(c: str, gen: List[str], left: bool):
        seen.update(c=c, gen=gen, left=left)
        return 0

    dispatch(app.registry, ["represent", "J2", "--gen", "id:J2", "--gen=proj:J2:J1", "--left"])
    assert seen == {"c": "J2", "gen": ["id:J2", "proj:J2:J1"], "left": True}

    dispatch(app.registry, ["represent", "J1"])
    assert seen == {"c": "J1", "gen": [], "left": False}


def test_missing_required_raises_input_error():
    app = make_app()

    @app.command("task", args=[Arg("name", str)])
    def task(name: str):
        return 0

    entry = app.registry.resolve("task")
    assert entry is not None
    with pytest.raises(InputError) as exc:
        entry.handler([])
    assert "Missing: name" in str(exc.value)
    assert "usage: task NAME" in str(exc.value)


@pytest.mark.parametrize("argv,message", [
    (["x", "--nope"], "Unknown option: --nope"),
    (["x", "--bound"], "Option --bound requires a value"),
    (["x", "--bound", "many"], "Invalid value for --bound"),
    (["x", "y"], "Too many positional arguments"),
])
def test_parse_errors(argv, message):
    spec = CommandSpec.from_args("t", [Arg("name"), Opt("bound", int, default=1)], int_or_str)
    errors: List[str] = []
    assert spec.parse(argv, on_error=errors.append) is None
    assert errors == [message]


def int_or_str(tp):
    return int if tp is int else str


def test_dispatch_returns_handler_exit_code():
    app = make_app()

    @app.command("verify", args=[])
    def verify():
        return 1

    assert dispatch(app.registry, "verify") == 1


def test_dispatch_handles_quoted_arguments():
    app = make_app()

    calls: List[str] = []

    @app.command("say", args=[Arg("message", str)])
    def say(message: str):
        calls.append(message)
        return 0

    dispatch(app.registry, 'say "hello world"')

    assert calls == ["hello world"]


def test_dispatch_unknown_command_reports():
    registry = CommandRegistry()
    errors: List[str] = []
    assert dispatch(registry, ["nothing"], on_error=errors.append) is None
    assert errors == ["Unknown: nothing"]
    assert registry.names() == []
