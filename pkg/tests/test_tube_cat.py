import numpy as np
import pytest

from detmorph import ff_linalg as fl
from detmorph.category import OpMorphism, Opposite
from detmorph.errors import StructureError
from detmorph.ff_linalg import FFMatrix
from detmorph.tube_cat import TubeCategory, hom_dim_formula, partitions


@pytest.fixture
def tube():
    return TubeCategory(2)


def test_hom_between_blocks_matches_min_formula(tube):
    assert tube.hom(tube.block(2), tube.block(1)).dim == 1
    assert tube.hom(tube.block(3), tube.block(2)).dim == 2
    x, y = tube.from_partition([2, 1]), tube.from_partition([3, 1])
    assert tube.hom(x, y).dim == hom_dim_formula((2, 1), (3, 1)) == 6


def test_non_nilpotent_matrix_is_rejected(tube):
    with pytest.raises(StructureError):
        tube.pair([[1, 0], [0, 0]])


def test_intertwining_is_checked(tube):
    with pytest.raises(StructureError):
        tube.morphism(tube.block(2), tube.block(2), [[0, 1], [0, 0]])


@pytest.mark.parametrize("p", [2, 3])
def test_normal_form_recovers_partition_after_conjugation(p):
    cat = TubeCategory(p)
    x = cat.from_partition([3, 1])
    rng = np.random.default_rng(3)
    P = FFMatrix.random(4, 4, p, rng)
    while not fl.is_invertible(P):
        P = FFMatrix.random(4, 4, p, rng)
    y = cat.pair(P @ x.N @ fl.inverse(P))
    assert cat.partition(y) == (3, 1)
    iso = cat.iso_test(x, y)
    assert iso is not None and cat.is_epi(iso) and cat.is_mono(iso)


def test_split_returns_blocks_in_descending_order(tube):
    x = tube.from_partition([1, 3, 2])
    parts = [s.obj.dim for s in tube.split(x).summands]
    assert parts == [3, 2, 1]
    assert not tube.is_indecomposable(x)
    assert tube.is_indecomposable(tube.block(4))


def test_kernel_and_cokernel_of_the_projection(tube):
    proj = tube.morphism(tube.block(2), tube.block(1), [[1, 0]])
    assert tube.is_epi(proj) and not tube.is_mono(proj)
    k, incl = tube.kernel(proj)
    assert tube.partition(k) == (1,)
    assert tube.compose(proj, incl) == tube.zero(k, tube.block(1))
    c, _ = tube.cokernel(proj)
    assert c.dim == 0


@pytest.mark.parametrize("a,b", [((1,), (1,)), ((2,), (1,)), ((2, 1), (3,)), ((2,), (2, 2))])
def test_ext_dimension_equals_hom_dimension(tube, a, b):
    x, y = tube.from_partition(a), tube.from_partition(b)
    assert tube.ext1(x, y).dim == tube.hom(y, x).dim == hom_dim_formula(a, b)


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_serre_gram_is_nondegenerate(tube, length):
    j = tube.block(length)
    gram = tube.serre_gram(j, tube.block(2))
    assert fl.rank(gram) == gram.rows == gram.cols


@pytest.mark.parametrize("length,middle", [(1, (2,)), (2, (3, 1)), (3, (4, 2))])
def test_almost_split_middle_terms(tube, length, middle):
    seq = tube.almost_split_sequence(length)
    assert tube.partition(seq.middle) == middle
    assert tube.is_mono(seq.iota) and tube.is_epi(seq.pi)
    assert tube.compose(seq.pi, seq.iota) == tube.zero(seq.left, seq.right)


def test_materialized_split_class_is_a_direct_sum(tube):
    j = tube.block(2)
    ext = tube.ext1(j, j)
    seq = tube.materialize(ext, ext.cocycle([0] * ext.dim))
    assert tube.partition(seq.middle) == (2, 2)


def test_pullback_square_commutes(tube):
    j = tube.block(2)
    ext = tube.ext1(j, j)
    t = tube.morphism(tube.block(1), j, [[0], [1]])
    assert tube.pullback_square_check(ext, ext.class_reps[0], t)


def test_identity_is_not_projectively_trivial(tube):
    j = tube.block(1)
    assert not tube.projectively_trivial_check(tube.identity(j), 2)
    assert tube.projectively_trivial_check(tube.zero(j, j), 2)
    pool = tube.indecomposables(3)
    assert tube.projectively_trivial_subspace(j, tube.block(2), pool).dim == 0


def test_partitions_are_listed_in_descending_order():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(TubeCategory(3).objects(4)) == 1 + 2 + 3 + 5


def test_describe_names_canonical_blocks(tube):
    assert tube.describe(tube.from_partition([2, 1])) == "J2+J1"
    assert tube.describe(tube.zero_object()) == "0"


def test_opposite_kernel_is_the_cokernel_reversed(tube):
    proj = tube.morphism(tube.block(2), tube.block(1), [[1, 0]])
    incl = tube.morphism(tube.block(1), tube.block(2), [[0], [1]])
    op = Opposite(tube)
    k_obj, k = op.kernel(OpMorphism(incl))
    assert isinstance(k, OpMorphism)
    assert tube.partition(k_obj) == (1,)
    assert tube.compose(k.inner, incl) == tube.zero(tube.block(1), k_obj)
    c_obj, c = op.cokernel(OpMorphism(proj))
    assert isinstance(c, OpMorphism)
    assert tube.partition(c_obj) == (1,)
