import pytest

from detmorph.ar_theory import ARTheory
from detmorph.config import Limits
from detmorph.determined import (
    BOUNDED,
    FALSE,
    TRUE,
    Engine,
    ar_determiner,
    epi_mono_dichotomy_report,
)
from detmorph.errors import LimitExceeded, NotApplicable
from detmorph.quiver_rep import QuiverCategory, linear_quiver
from detmorph.tube_cat import TubeCategory


@pytest.fixture
def tube():
    return TubeCategory(2)


@pytest.fixture
def engine(tube):
    return Engine(tube)


def proj(tube, m, l):
    rows = [[1 if i == j else 0 for j in range(m)] for i in range(l)]
    return tube.morphism(tube.block(m), tube.block(l), rows)


def test_projection_is_determined_by_its_kernel(tube, engine):
    v = engine.is_right_determined(proj(tube, 2, 1), tube.block(1))
    assert v.verdict == BOUNDED
    assert v.holds and v.witness is None
    assert v.checks_performed == v.bound


def test_zero_into_a_block_is_not_determined(tube, engine):
    alpha = tube.zero(tube.zero_object(), tube.block(1))
    v = engine.is_right_determined(alpha, tube.block(1))
    assert v.verdict == FALSE
    assert tube.describe(v.witness_object) == "J2"
    assert v.witness["object"] == "J2"
    assert v.to_json()["checks_performed"] == 2


def test_identity_is_determined_by_anything(tube, engine):
    ident = tube.identity(tube.block(2))
    assert engine.is_right_determined(ident, tube.zero_object()).holds
    assert engine.is_right_determined(ident, tube.block(1), bound=3).holds


def test_left_determination_of_the_socle_inclusion(tube, engine):
    incl = tube.morphism(tube.block(1), tube.block(2), [[0], [1]])
    assert engine.is_left_determined(incl, tube.block(1)).holds
    zero = tube.zero(tube.block(1), tube.zero_object())
    assert engine.is_left_determined(zero, tube.block(1)).verdict == FALSE


@pytest.mark.parametrize("c,y,rows", [((1,), (1,), 2), ((2,), (2,), 3), ((), (1,), 1)])
def test_auslander_table_row_counts(tube, engine, c, y, rows):
    table = engine.auslander_table(tube.from_partition(c), tube.from_partition(y))
    assert len(table.rows) == rows
    assert [r.submodule.dim for r in table.rows] == sorted(r.submodule.dim for r in table.rows)
    for row in table.rows:
        assert all(row.checks.values())
    assert table.to_json(tube)["hom_dim"] == tube.hom(table.c, table.y).dim


def test_table_matches_brute_force_class_count(tube, engine):
    j1 = tube.block(1)
    table = engine.auslander_table(j1, j1)
    assert engine.determined_class_count(j1, j1, source_bound=2) == len(table.rows)


def test_represented_pair_has_the_requested_image(tube, engine):
    j2 = tube.block(2)
    g = engine.gamma_module(j2, j2)
    assert engine.check_action(g)
    for h in engine.enumerate_submodules(g):
        alpha = engine.represent_pair(j2, h)
        assert engine.im_hom(j2, alpha) == h


def test_right_minimize_drops_a_redundant_summand(tube, engine):
    alpha = tube.morphism(tube.from_partition([1, 1]), tube.block(1), [[1, 0]])
    result = engine.right_minimize(alpha)
    assert result.certified
    assert result.morphism.source.dim == 1
    assert result.dropped == ["J1"]
    assert engine.right_equivalent(alpha, result.morphism)


def test_right_equivalence_separates_distinct_images(tube, engine):
    j1 = tube.block(1)
    assert not engine.right_equivalent(proj(tube, 2, 1), tube.identity(j1))
    assert engine.right_equivalent(tube.identity(j1), proj(tube, 1, 1))


def test_enumeration_limit_is_enforced():
    cat = TubeCategory(3, Limits(enumeration_limit=8))
    eng = Engine(cat)
    with pytest.raises(LimitExceeded):
        eng.enumerate_submodules(eng.gamma_module(cat.block(2), cat.block(2)))


def test_serre_determiner_is_the_kernel(tube, engine):
    assert tube.partition(engine.serre_determiner(proj(tube, 3, 1))) == (2,)
    with pytest.raises(NotApplicable):
        engine.serre_determiner(tube.zero(tube.zero_object(), tube.block(1)))


def test_minimal_determiner_scan_stops_at_the_kernel(tube, engine):
    scan = engine.minimal_determiner_scan(proj(tube, 2, 1), candidate_bound=2)
    assert tube.describe(scan.determiner) == "J1"
    assert [name for name, _ in scan.verdicts] == ["0", "J1"]


def test_epi_mono_dichotomy_on_small_objects(tube):
    report = epi_mono_dichotomy_report(tube, 2)
    for side in ("right", "left"):
        assert report[side]["epis"] > 0
        assert report[side]["non_epis"] > 0


def test_dichotomy_needs_the_tube():
    cat = QuiverCategory(linear_quiver(2), 2)
    with pytest.raises(NotApplicable):
        epi_mono_dichotomy_report(cat, 2)


def test_ar_determiner_on_a2():
    ar = ARTheory(QuiverCategory(linear_quiver(2), 2))
    cat = ar.cat
    top = cat.hom(ar.projective("1"), ar.simple("1")).basis[0]
    c = ar_determiner(ar, top)
    assert c.dims == (2, 2)
    v = Engine(cat).is_right_determined(top, c, bound=2)
    assert v.verdict == TRUE
