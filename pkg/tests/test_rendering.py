from detmorph.app import App
from detmorph.ui import TableEl, build_table, descriptors_to_elements


def test_render_outputs_queued_content(capsys):
    app = App("render_test")

    app.info("Hello")
    app.markdown("**World**")
    app.table("Items", [{"dim": 1, "verdict": "true"}])

    app._render()
    err = capsys.readouterr().err
    assert "Hello" in err
    assert "World" in err
    assert "Items" in err
    assert not app.state.get("__print_queue__")


def test_quiet_suppresses_info_but_not_warnings(capsys):
    app = App("quiet_test")
    app.settings.quiet = True

    app.info("hidden")
    app.ok("hidden too")
    app.table("hidden table", [{"a": 1}])
    app.warn("shown")

    app._render()
    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "shown" in err


def test_numeric_columns_are_right_aligned():
    table = build_table(TableEl("t", [{"summand": "J2", "dim": 2, "multiplicity": 1}]))
    justify = {c.header: c.justify for c in table.columns}
    assert justify == {"summand": "left", "dim": "right", "multiplicity": "right"}


def test_descriptors_skip_unknown_kinds():
    elements = descriptors_to_elements([{"k": "text", "t": "a"}, {"k": "bogus"},
                                        {"k": "table", "title": "x", "rows": []}])
    assert len(elements) == 2
