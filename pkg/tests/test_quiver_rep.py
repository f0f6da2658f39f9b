import pytest

from detmorph.config import Limits
from detmorph.errors import LimitExceeded, StructureError
from detmorph.quiver_rep import Quiver, QuiverCategory, linear_quiver


@pytest.fixture
def a2():
    return QuiverCategory(linear_quiver(2), 2)


def test_oriented_cycle_is_rejected():
    with pytest.raises(StructureError):
        Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])


def test_hom_dimensions_on_a2(a2):
    s1, s2, p1 = a2.rep([1, 0]), a2.rep([0, 1]), a2.rep([1, 1], [[[1]]])
    assert a2.hom(p1, s1).dim == 1
    assert a2.hom(s1, p1).dim == 0
    assert a2.hom(s2, p1).dim == 1
    assert a2.hom(p1, p1).dim == 1


def test_non_commuting_square_is_rejected(a2):
    p1 = a2.rep([1, 1], [[[1]]])
    with pytest.raises(StructureError):
        a2.morphism(p1, p1, [[[1]], [[0]]])


def test_kernel_image_cokernel_of_top_projection(a2):
    s1, p1 = a2.rep([1, 0]), a2.rep([1, 1], [[[1]]])
    top = a2.hom(p1, s1).basis[0]
    assert a2.is_epi(top) and not a2.is_mono(top)
    k, incl = a2.kernel(top)
    assert k.dims == (0, 1)
    assert a2.is_mono(incl)
    assert a2.compose(top, incl) == a2.zero(k, s1)
    c, _ = a2.cokernel(top)
    assert c.dim == 0
    assert a2.image(top).obj.dims == (1, 0)


def test_decompose_groups_isomorphic_summands(a2):
    s1, s2, p1 = a2.rep([1, 0]), a2.rep([0, 1]), a2.rep([1, 1], [[[1]]])
    mixed = a2.decompose(a2.direct_sum([s2, s1]).obj)
    assert [(m.dims, k) for m, k in mixed.parts] == [((0, 1), 1), ((1, 0), 1)]
    twice = a2.decompose(a2.direct_sum([p1, p1]).obj)
    assert len(twice.parts) == 1 and twice.parts[0][1] == 2
    assert twice.certified


def test_split_injections_and_projections_are_a_biproduct(a2):
    s1, p1 = a2.rep([1, 0]), a2.rep([1, 1], [[[1]]])
    total = a2.direct_sum([p1, s1]).obj
    parts = a2.split(total).summands
    assert sorted(s.obj.dim for s in parts) == [1, 2]
    for s in parts:
        assert a2.compose(s.projection, s.injection) == a2.identity(s.obj)


def test_indecomposables_of_a2_and_a3():
    assert len(QuiverCategory(linear_quiver(2), 2).indecomposables(2)) == 3
    a3 = QuiverCategory(linear_quiver(3), 3)
    found = a3.indecomposables(3)
    assert len(found) == linear_quiver(3).positive_root_count() == 6
    assert all(a3.is_indecomposable(m) for m in found)


def test_objects_are_sums_up_to_the_bound(a2):
    objs = a2.objects(2)
    assert len(objs) == 6
    assert all(0 < m.dim <= 2 for m in objs)
    assert a2.pool_exhaustive(2) and not a2.pool_exhaustive(1)


def test_enumeration_respects_the_search_limit():
    tight = Limits(indecomposable_search_limit=4)
    with pytest.raises(LimitExceeded):
        QuiverCategory(linear_quiver(3), 3, tight).indecomposables(3)


def test_iso_test_finds_a_change_of_basis():
    cat = QuiverCategory(linear_quiver(2), 3)
    x = cat.rep([1, 1], [[[1]]])
    y = cat.rep([1, 1], [[[2]]])
    iso = cat.iso_test(x, y)
    assert iso is not None and cat.is_iso(iso)
    assert cat.iso_test(x, cat.rep([1, 1])) is None


def test_serialization_uses_vertex_and_arrow_names(a2):
    p1 = a2.rep([1, 1], [[[1]]])
    assert a2.object_to_json(p1) == {"dims": {"1": 1, "2": 1}, "maps": {"a1": [[1]]}}
    assert a2.morphism_to_json(a2.identity(p1))["maps"] == {"1": [[1]], "2": [[1]]}
