import numpy as np
import pytest

from detmorph import ff_linalg as fl
from detmorph.errors import DimensionMismatch, FieldMismatch
from detmorph.ff_linalg import FFMatrix


def test_shapes_reduce_mod_p_and_allow_empty():
    m = FFMatrix([[3, -1], [5, 7]], 3)
    assert m.to_lists() == [[0, 2], [2, 1]]
    empty = FFMatrix([], 2, shape=(0, 3))
    assert empty.shape == (0, 3)
    assert FFMatrix([[], []], 2, shape=(2, 0)).shape == (2, 0)


def test_shape_mismatch_is_reported():
    with pytest.raises(DimensionMismatch):
        FFMatrix([[1, 0]], 2, shape=(2, 2))
    with pytest.raises(DimensionMismatch):
        FFMatrix([[1, 0]], 2) @ FFMatrix([[1, 0]], 2)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        FFMatrix([[1]], 2) + FFMatrix([[1]], 3)


def test_rank_of_small_matrix_over_f2():
    m = FFMatrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]], 2)
    assert fl.rank(m) == 2
    assert fl.kernel_basis(m).dim == 1
    assert fl.kernel_basis(m).vectors()[0].tolist() == [1, 1, 1]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_nullity_and_rref_idempotence(p):
    rng = np.random.default_rng(7)
    for _ in range(20):
        rows, cols = rng.integers(1, 7, size=2)
        m = FFMatrix.random(int(rows), int(cols), p, rng)
        red = fl.rref(m)
        assert red.rank + fl.kernel_basis(m).dim == m.cols
        assert fl.rref(red.matrix).matrix == red.matrix
        for v in fl.kernel_basis(m).vectors():
            assert not (m @ FFMatrix.column(v, p)).flat().any()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_solve_and_inverse(p):
    rng = np.random.default_rng(11)
    m = FFMatrix.random(4, 4, p, rng)
    while not fl.is_invertible(m):
        m = FFMatrix.random(4, 4, p, rng)
    inv = fl.inverse(m)
    assert m @ inv == FFMatrix.identity(4, p)
    b = np.array([1, 0, 1, 1])
    x = fl.solve(m, b)
    assert ((m.data @ x - b) % p == 0).all()


def test_solve_inconsistent_returns_none():
    m = FFMatrix([[1, 0], [0, 0]], 2)
    assert fl.solve(m, [0, 1]) is None


def test_subspace_canonical_form_and_equality():
    a = fl.span_vectors([np.array([1, 1, 0]), np.array([0, 1, 1])], 3, 2)
    b = fl.span_vectors([np.array([1, 0, 1]), np.array([1, 1, 0])], 3, 2)
    assert a == b
    assert hash(a) == hash(b)
    assert a.pivots == (0, 1)


def test_subspace_sum_intersection_and_inclusion():
    x = fl.span_vectors([np.array([1, 0, 0])], 3, 3)
    y = fl.span_vectors([np.array([0, 1, 0])], 3, 3)
    s = fl.subspace_sum(x, y)
    assert s.dim == 2
    assert fl.is_subset(x, s) and not fl.is_subset(s, x)
    assert fl.intersect(x, y).dim == 0
    assert fl.intersect(s, x) == x


def test_quotient_map_kills_subspace_and_section_splits_it():
    s = fl.span_vectors([np.array([1, 2, 0, 1])], 4, 3)
    q = s.quotient_map()
    assert q.shape == (3, 4)
    assert not (q @ FFMatrix.column(s.vectors()[0], 3)).flat().any()
    assert q @ s.quotient_section() == FFMatrix.identity(3, 3)


def test_coordinates_combine_round_trip():
    s = fl.span_vectors([np.array([1, 0, 2]), np.array([0, 1, 1])], 3, 5)
    v = s.combine([3, 4])
    assert s.coordinates(v).tolist() == [3, 4]


def test_iter_lines_counts_projective_points():
    assert len(list(fl.iter_lines(3, 2))) == 7
    assert len(list(fl.iter_lines(2, 3))) == 4


def test_kron_and_block_diag():
    a = FFMatrix([[1, 1], [0, 1]], 2)
    k = fl.kron(a, FFMatrix.identity(2, 2))
    assert k.shape == (4, 4)
    d = fl.block_diag([a, FFMatrix.identity(1, 2)], 2)
    assert d.to_lists() == [[1, 1, 0], [0, 1, 0], [0, 0, 1]]


def test_trace_and_power():
    n = FFMatrix([[0, 0], [1, 0]], 3)
    assert n.power(2).is_zero()
    assert int((FFMatrix.identity(4, 3)).trace()) == 1
