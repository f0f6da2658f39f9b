"""Rich elements for the stderr side of a run: messages, help text, result tables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import singledispatch
from typing import Any, Callable, Dict, Iterable, List, Optional

from rich.console import Console
from rich.markdown import Markdown as RichMarkdown
from rich.panel import Panel
from rich.table import Table

from .theme import INDIGO, VERDICT_STYLES

# columns holding counts or dimensions
_NUMERIC = {"dim", "dim_h", "rows", "checks", "count", "bound", "morphisms", "classes",
            "ext", "hom", "rank", "pairs", "multiplicity"}


@dataclass
class Markdown:
    text: str


@dataclass
class Text:
    text: str


@dataclass
class TableEl:
    title: str
    rows: List[dict]
    columns: Optional[List[str]] = None


def _cell(value: Any) -> str:
    text = str(value)
    style = VERDICT_STYLES.get(text)
    return f"[{style}]{text}[/{style}]" if style else text


def build_table(el: TableEl) -> Table:
    """A verdict-coloured table; the first column is bold, numeric columns right-justified."""
    cols = el.columns or (list(el.rows[0]) if el.rows else [])
    table = Table(title=el.title, header_style=INDIGO)
    for i, name in enumerate(cols):
        table.add_column(name, justify="right" if name.lower() in _NUMERIC else "left",
                         style="bold" if i == 0 else None)
    for row in el.rows:
        table.add_row(*(_cell(row.get(c, "")) for c in cols))
    return table


@singledispatch
def _renderable(element: Any) -> Any:
    return str(element)


@_renderable.register
def _(element: Markdown) -> Any:
    return Panel.fit(RichMarkdown(element.text), border_style=INDIGO)


@_renderable.register
def _(element: Text) -> Any:
    return element.text


@_renderable.register
def _(element: TableEl) -> Any:
    return build_table(element)


def render_elements(console: Console, elements: Any | Iterable[Any] | None):
    if elements is None:
        return
    if not isinstance(elements, (list, tuple)):
        elements = [elements]
    for element in elements:
        if element is not None:
            console.print(_renderable(element))


_DESCRIPTORS: Dict[str, Callable[[dict], Any]] = {
    "md": lambda d: Markdown(d.get("t", "")),
    "text": lambda d: Text(d.get("t", "")),
    "table": lambda d: TableEl(d.get("title", ""), d.get("rows", []), d.get("cols")),
}


def descriptors_to_elements(descs: Iterable[dict]) -> List[Any]:
    """Queue descriptors to elements; unknown kinds are dropped."""
    return [_DESCRIPTORS[d["k"]](d) for d in descs or [] if d.get("k") in _DESCRIPTORS]
