from fractions import Fraction

import numpy as np
import pytest
import sympy
import xmodlie
from hypothesis import given
from hypothesis.strategies import data
from xmodlie import DimensionError, IndexingError, Subspace, TensorData
from .strategies import matrices, subspaces, vectors, assert_vec_equal


# Scalars


@pytest.mark.exactla
def test_rational_parsing():
    assert xmodlie.rational("3/4") == Fraction(3, 4)
    assert xmodlie.rational(" -2 ") == Fraction(-2)
    assert xmodlie.rational("6/8") == Fraction(3, 4)
    assert xmodlie.rational(5) == Fraction(5)
    with pytest.raises(TypeError):
        xmodlie.rational(0.5)
    with pytest.raises(TypeError):
        xmodlie.rational(True)
    with pytest.raises(ValueError):
        xmodlie.rational("1/0")
    with pytest.raises(ValueError):
        xmodlie.rational("one half")


@pytest.mark.exactla
def test_format_rational():
    assert xmodlie.format_rational(Fraction(-3, 6)) == "-1/2"
    assert xmodlie.format_rational(4) == "4"


# Strided storage


@pytest.mark.exactla
def test_tensor_data_sparse():
    t = TensorData.from_sparse([(1, 2, 1, "1/2"), (2, 1, 1, -1)], (2, 2, 1), one_based=True)
    assert t.get((0, 1, 0)) == Fraction(1, 2)
    assert t.get((1, 0, 0)) == -1
    assert list(t.sparse_entries(one_based=True)) == [(1, 2, 1, Fraction(1, 2)), (2, 1, 1, -1)]
    with pytest.raises(IndexingError):
        TensorData.from_sparse([(3, 1, 1, 1)], (2, 2, 1), one_based=True)
    with pytest.raises(IndexingError):
        TensorData.from_sparse([(1, 1, 1)], (2, 2, 1), one_based=True)


@pytest.mark.exactla
def test_tensor_data_permute():
    t = TensorData(list(range(6)), (2, 3))
    p = t.permute(1, 0)
    assert p.shape == (3, 2)
    assert not p.is_contiguous()
    for i in range(2):
        for j in range(3):
            assert t.get((i, j)) == p.get((j, i))
    assert TensorData.from_numpy(p.to_numpy()).is_contiguous()
    assert TensorData.from_numpy(p.to_numpy()) == p
    with pytest.raises(IndexingError):
        t.permute(0, 0)


@pytest.mark.exactla
def test_tensor_data_indices():
    t = TensorData.zeros((2, 3, 2))
    seen = list(t.indices())
    assert len(seen) == len(set(seen)) == 12
    assert seen[0] == (0, 0, 0) and seen[-1] == (1, 2, 1)
    with pytest.raises(IndexingError):
        t.get((0, 3, 0))


# Matrices


@pytest.mark.exactla
def test_matmul_empty_inner():
    a = xmodlie.zeros(2, 0)
    b = xmodlie.zeros(0, 3)
    out = xmodlie.matmul(a, b)
    assert out.shape == (2, 3)
    assert all(isinstance(v, Fraction) for v in out.ravel())
    with pytest.raises(DimensionError):
        xmodlie.matmul(xmodlie.zeros(2, 2), xmodlie.zeros(3, 1))


@pytest.mark.exactla
@given(matrices())
def test_rref_canonical(m):
    red, pivots, r = xmodlie.rref(m)
    again, pivots2, r2 = xmodlie.rref(red)
    assert xmodlie.mat_equal(red, again)
    assert pivots == pivots2 and r == r2
    for k, p in enumerate(pivots):
        assert red[k, p] == 1
        for i in range(red.shape[0]):
            if i != k:
                assert red[i, p] == 0


@pytest.mark.exactla
@given(matrices())
def test_rref_matches_sympy(m):
    red, pivots, r = xmodlie.rref(m)
    assert all(isinstance(v, Fraction) for v in red.ravel())
    assert red.shape == m.shape
    if m.size == 0:
        assert pivots == () and r == 0
        return
    expected, expected_pivots = sympy.Matrix(m.tolist()).rref()
    assert pivots == tuple(expected_pivots)
    for (i, j), v in np.ndenumerate(red):
        assert sympy.Rational(v.numerator, v.denominator) == expected[i, j]


@pytest.mark.exactla
def test_kernel_of_empty_shapes():
    assert xmodlie.kernel_basis(xmodlie.zeros(0, 3)).is_full()
    assert xmodlie.kernel_basis(xmodlie.zeros(2, 0)).ambient_dim == 0
    K = xmodlie.kernel_basis([[1, 2, 3], [2, 4, 6]])
    assert K.dim == 2
    assert K == Subspace(3, [[-2, 1, 0], [-3, 0, 1]])


@pytest.mark.exactla
def test_solve_columns():
    m = xmodlie.to_matrix([[1, 1], [0, 2], [1, 3]])
    ys = xmodlie.to_matrix([[1, 0], [2, "1/2"], [3, "1/2"]])
    X = xmodlie.solve_columns(m, ys)
    assert xmodlie.mat_equal(X, xmodlie.to_matrix([[0, "-1/4"], [1, "1/4"]]))
    assert xmodlie.mat_equal(xmodlie.matmul(m, X), ys)
    with pytest.raises(DimensionError):
        xmodlie.solve_columns(m, xmodlie.identity(2))


@pytest.mark.exactla
@given(matrices())
def test_rank_nullity(m):
    K = xmodlie.kernel_basis(m)
    assert xmodlie.rank(m) + K.dim == m.shape[1]
    for v in K.basis:
        assert xmodlie.is_zero(xmodlie.matmul(m, v))


@pytest.mark.exactla
@given(data())
def test_preimage(d):
    m = d.draw(matrices())
    x = d.draw(vectors(m.shape[1]))
    y = xmodlie.matmul(m, x)
    sol = xmodlie.preimage(m, y)
    assert sol is not None
    assert_vec_equal(xmodlie.matmul(m, sol), y)


@pytest.mark.exactla
def test_preimage_outside_image():
    m = xmodlie.to_matrix([[1, 0], [0, 0]])
    assert xmodlie.preimage(m, [0, 1]) is None
    assert xmodlie.solve_columns(m, xmodlie.identity(2)) is None


# Subspaces


@pytest.mark.exactla
@given(data())
def test_dimension_formula(d):
    A = d.draw(subspaces())
    B = d.draw(subspaces(A.ambient_dim))
    assert (A + B).dim + (A & B).dim == A.dim + B.dim
    assert (A + B).includes(A) and A.includes(A & B)


@pytest.mark.exactla
@given(data())
def test_basis_independence(d):
    A = d.draw(subspaces())
    scaled = [Fraction(k + 2) * v for k, v in enumerate(A.basis)]
    assert Subspace(A.ambient_dim, list(reversed(scaled))) == A
    for v in A.basis:
        assert v in A


@pytest.mark.exactla
@given(subspaces())
def test_quotient_maps(W):
    n = W.ambient_dim
    proj, section, q = W.quotient()
    assert q == n - W.dim
    assert xmodlie.mat_equal(xmodlie.matmul(proj, section), xmodlie.identity(q))
    for w in W.basis:
        assert xmodlie.is_zero(xmodlie.matmul(proj, w))


@pytest.mark.exactla
def test_intersection_example():
    A = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    B = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    meet = A & B
    assert meet == Subspace(3, [[0, 1, 0]])
    assert A.coordinates([2, 3, 0]) is not None
    assert A.coordinates([0, 0, 1]) is None
    with pytest.raises(DimensionError):
        A & Subspace(2, [[1, 0]])


@pytest.mark.exactla
def test_preimage_under():
    proj = xmodlie.to_matrix([[1, 0, 0], [0, 1, 0]])
    line = Subspace(2, [[1, 0]])
    pre = line.preimage_under(proj)
    assert pre == Subspace(3, [[1, 0, 0], [0, 0, 1]])
    assert Subspace(3, [[0, 1, 1]]).image_under(proj) == Subspace(2, [[0, 1]])
