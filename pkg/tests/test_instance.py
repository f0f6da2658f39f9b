import json

import pytest

from detmorph.errors import (
    DimensionMismatch,
    InputError,
    NotApplicable,
    StructureError,
    UnknownName,
)
from detmorph.instance import builtin_names, dump_instance, load_instance, locate

TUBE = """{
  "kind": "tube",
  "field": 3,
  "objects": {
    "X": {"partition": [2, 1]},
    "W": {"dim": 2, "N": [[0, 0], [2, 0]]}
  },
  "morphisms": {
    "f": {"source": "X", "target": "J1", "matrix": [[1, 0, 0]]}
  }
}
"""

QUIVER = """{
  "kind": "quiver",
  "field": 2,
  "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]},
  "objects": {
    "M": {"dims": {"1": 1, "2": 1}, "maps": {"a": [[1]]}}
  },
  "morphisms": {
    "top": {"source": "M", "target": "S1", "maps": {"1": [[1]]}}
  }
}
"""


def test_load_tube_instance():
    inst = load_instance(TUBE)
    assert inst.kind == "tube" and inst.p == 3
    cat = inst.category
    assert cat.partition(inst.object("X")) == (2, 1)
    assert cat.partition(inst.object("W")) == (2,)
    assert cat.is_epi(inst.morphism("f"))
    assert cat.describe(inst.object("X")) == "X"


def test_field_override_wins():
    assert load_instance(TUBE, field=5).p == 5


def test_load_quiver_instance_with_builtins():
    inst = load_instance(QUIVER)
    cat = inst.category
    assert inst.object("M") == inst.object("P1")
    assert cat.is_epi(inst.morphism("top"))
    assert inst.object("S1+S2").dims == (1, 1)
    assert inst.object("0").dim == 0
    assert "I2" in builtin_names(inst)


def test_quiver_shorthand():
    inst = load_instance('{"kind": "quiver", "quiver": "A3"}')
    assert inst.quiver.vertices == ("1", "2", "3")
    assert inst.object("P1").dims == (1, 1, 1)


@pytest.mark.parametrize("name,partition", [
    ("proj:J3:J1", (1,)),
    ("incl:J1:J3", (1,)),
    ("hom:J2:J1:0", (1,)),
    ("id:J2+J1", (2, 1)),
])
def test_builtin_tube_morphisms(name, partition):
    inst = load_instance('{"kind": "tube"}')
    f = inst.morphism(name)
    cat = inst.category
    assert cat.partition(cat.image(f).obj) == partition


def test_zero_morphism_from_zero_object():
    inst = load_instance('{"kind": "tube"}')
    f = inst.morphism("zero:0:J1")
    assert f.source.dim == 0 and f.target.dim == 1


def test_empty_instance():
    inst = load_instance("{}")
    assert inst.empty
    with pytest.raises(InputError):
        inst.require()
    assert builtin_names(inst) == []
    assert load_instance("   ").empty


def test_wrong_kind_is_not_applicable():
    with pytest.raises(NotApplicable):
        load_instance('{"kind": "tube"}').require("quiver")


def test_malformed_json_reports_position():
    with pytest.raises(InputError) as exc:
        load_instance('{\n  "kind": "tube",\n  "objects": {\n}')
    assert exc.value.line is not None


def test_unknown_kind_points_at_the_kind_key():
    with pytest.raises(InputError) as exc:
        load_instance('{\n  "kind": "graph"\n}')
    assert exc.value.line == 2


def test_bad_matrix_shape_is_reported_with_location():
    text = TUBE.replace("[[1, 0, 0]]", "[[1, 0]]")
    with pytest.raises(DimensionMismatch) as exc:
        load_instance(text)
    assert exc.value.line == 9
    assert "morphism f" in str(exc.value)


def test_non_commuting_morphism_is_rejected():
    text = QUIVER.replace('"maps": {"1": [[1]]}', '"maps": {"1": [[1]], "2": [[1]]}')
    with pytest.raises(DimensionMismatch):
        load_instance(text)
    bad = QUIVER.replace('"target": "S1"', '"target": "P1"').replace(
        '"maps": {"1": [[1]]}', '"maps": {"1": [[1]], "2": [[0]]}')
    with pytest.raises(StructureError):
        load_instance(bad)


def test_non_nilpotent_object_is_rejected():
    text = TUBE.replace("[[0, 0], [2, 0]]", "[[1, 0], [0, 0]]")
    with pytest.raises(StructureError) as exc:
        load_instance(text)
    assert exc.value.line == 6


def test_unknown_names():
    inst = load_instance(TUBE)
    with pytest.raises(UnknownName):
        inst.object("Q")
    with pytest.raises(UnknownName):
        inst.morphism("proj:J1:J3")
    with pytest.raises(UnknownName):
        inst.morphism("hom:J2:J1:7")


@pytest.mark.parametrize("index", ["-1", "-2"])
def test_negative_hom_index_is_unknown(index):
    inst = load_instance(TUBE)
    with pytest.raises(UnknownName):
        inst.morphism(f"hom:J2:J1:{index}")


def test_dump_reloads_to_the_same_objects():
    inst = load_instance(TUBE)
    again = load_instance(dump_instance(inst))
    assert again.object("X") == inst.object("X")
    assert again.morphism("f") == inst.morphism("f")
    assert json.loads(dump_instance(inst))["morphisms"]["f"]["target"] == "J1"


def test_digest_is_stable():
    assert load_instance(TUBE).digest() == load_instance(TUBE).digest()
    assert locate(TUBE, "W") == (6, 5)
