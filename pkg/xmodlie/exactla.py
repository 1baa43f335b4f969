"""
Exact rational linear algebra.

Matrices and vectors are numpy object arrays holding :class:`Fraction` entries.
Row reduction and null spaces are delegated to sympy DomainMatrix over QQ.
Every subspace is kept in canonical reduced row echelon form, so subspace
equality is basis equality.
"""

from fractions import Fraction
import logging

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .operators import rational

logger = logging.getLogger(__name__)


class DimensionError(RuntimeError):
    "Exception raised when operands do not share a dimension."
    pass


# Construction


def to_matrix(data, shape=None):
    """
    Convert nested sequences (or an array) to an exact matrix.

    Args:
        data: nested sequence, ndarray, or :class:`Subspace`
        shape (tuple, optional): shape to use when `data` is empty

    Returns:
        ndarray : object array of shape (rows, cols) with Fraction entries
    """
    if isinstance(data, Subspace):
        return data.basis.copy()
    arr = np.asarray(data, dtype=object)
    if arr.size == 0:
        if arr.ndim == 2:
            shape = arr.shape
        elif shape is None:
            shape = (0, 0)
        return zeros(*shape)
    if arr.ndim != 2:
        raise DimensionError(f"Expected a 2-d matrix, got shape {arr.shape}.")
    out = np.empty(arr.shape, dtype=object)
    for index, v in np.ndenumerate(arr):
        out[index] = rational(v)
    return out


def vector(data):
    "Exact 1-d vector from a sequence."
    arr = np.asarray(data, dtype=object).ravel()
    out = np.empty(arr.shape[0], dtype=object)
    for i, v in enumerate(arr):
        out[i] = rational(v)
    return out


def zeros(rows, cols=None):
    "Zero matrix, or zero vector when `cols` is None."
    if cols is None:
        out = np.empty(rows, dtype=object)
    else:
        out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def unit(n, i):
    "Standard basis vector e_i of length n."
    out = zeros(n)
    out[i] = Fraction(1)
    return out


def matmul(a, b):
    """
    Exact matrix (or matrix-vector) product.

    Returns Fraction entries even when the inner dimension is 0.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape[-1] != b.shape[0]:
        raise DimensionError(f"Cannot multiply shapes {a.shape} and {b.shape}.")
    out_shape = a.shape[:-1] + b.shape[1:]
    if a.shape[-1] == 0:
        return zeros(*out_shape) if len(out_shape) > 0 else Fraction(0)
    if any(s == 0 for s in out_shape):
        return np.empty(out_shape, dtype=object)
    return np.dot(a, b)


def vstack(blocks, cols):
    "Stack row blocks with `cols` columns; empty input gives a 0 x cols matrix."
    blocks = [to_matrix(b, shape=(0, cols)) for b in blocks]
    blocks = [b for b in blocks if b.shape[0] > 0]
    if not blocks:
        return zeros(0, cols)
    for b in blocks:
        if b.shape[1] != cols:
            raise DimensionError(f"Block with {b.shape[1]} columns, expected {cols}.")
    return np.vstack(blocks)


def is_zero(m):
    return all(v == 0 for v in np.asarray(m, dtype=object).ravel())


def mat_equal(a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.ravel(), b.ravel()))


# Row reduction


def _to_domain(a):
    "Exact matrix as a sympy DomainMatrix over QQ."
    rows = [[QQ(int(v.numerator), int(v.denominator)) for v in row] for row in a]
    return DomainMatrix(rows, a.shape, QQ)


def _from_domain(dm):
    rows, cols = dm.shape
    out = zeros(rows, cols)
    if rows == 0 or cols == 0:
        return out
    mat = dm.to_Matrix()
    for i in range(rows):
        for j in range(cols):
            q = mat[i, j]
            out[i, j] = Fraction(int(q.p), int(q.q))
    return out


def rref(m):
    """
    Canonical reduced row echelon form, computed by sympy over QQ.

    Args:
        m (matrix): input matrix

    Returns:
        tuple : (rref matrix, pivot column indices, rank)
    """
    a = to_matrix(m)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.copy(), (), 0
    red, pivots = _to_domain(a).rref()
    pivots = tuple(int(p) for p in pivots)
    return _from_domain(red), pivots, len(pivots)


def rank(m):
    a = to_matrix(m)
    if a.size == 0:
        return 0
    return int(_to_domain(a).rank())


def kernel_basis(m):
    """
    Null space of `m`.

    Args:
        m (matrix): rows x cols

    Returns:
        :class:`Subspace` : {x : m x = 0} inside Q^cols
    """
    m = to_matrix(m)
    rows, cols = m.shape
    if cols == 0:
        return Subspace(0)
    if rows == 0:
        return Subspace.full(cols)
    return Subspace(cols, _from_domain(_to_domain(m).nullspace()))


def image(m):
    "Column space of `m` as a subspace of Q^rows."
    m = to_matrix(m)
    return Subspace(m.shape[0], m.T)


def preimage(m, y):
    """
    Canonical solution of m x = y.

    Free variables are set to 0.

    Args:
        m (matrix): rows x cols
        y (vector): length rows

    Returns:
        ndarray or None : x with m x = y, or None when y is not in the image
    """
    m = to_matrix(m)
    y = vector(y)
    rows, cols = m.shape
    if y.shape[0] != rows:
        raise DimensionError(f"Right-hand side of length {y.shape[0]} for {rows} rows.")
    x = solve_columns(m, y.reshape(rows, 1))
    return None if x is None else x[:, 0]


def solve_columns(m, ys):
    """
    Canonical preimages of each column of `ys`, from one row reduction of
    the augmented matrix [m | ys].

    Returns:
        ndarray or None : matrix X with m X = ys, or None if a column has no preimage
    """
    m = to_matrix(m)
    rows, cols = m.shape
    ys = to_matrix(ys, shape=(rows, 0))
    if ys.shape[0] != rows:
        raise DimensionError(f"Right-hand sides with {ys.shape[0]} rows for {rows} rows.")
    out = zeros(cols, ys.shape[1])
    if rows == 0 or ys.shape[1] == 0:
        return out
    red, pivots, _ = rref(np.hstack([m, ys]))
    if any(p >= cols for p in pivots):
        return None
    for k, p in enumerate(pivots):
        out[p, :] = red[k, cols:]
    return out


class Subspace:
    """
    A subspace of Q^n given by a canonical RREF basis.

    Attributes:
        ambient_dim (int): n
        basis (ndarray): dim x n matrix in reduced row echelon form
        pivots (tuple): pivot column of each basis row
    """

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = int(ambient_dim)
        rows = to_matrix(vectors, shape=(0, self.ambient_dim))
        if rows.shape[0] > 0 and rows.shape[1] != self.ambient_dim:
            raise DimensionError(
                f"Vectors of length {rows.shape[1]} in ambient dimension {self.ambient_dim}."
            )
        red, pivots, r = rref(rows)
        self.basis = red[:r] if r > 0 else zeros(0, self.ambient_dim)
        self.pivots = pivots

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, identity(n))

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def codim(self):
        return self.ambient_dim - self.dim

    def is_zero(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.ambient_dim

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"Ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ."
            )

    def reduce(self, v):
        "Remainder of `v` after clearing the pivot coordinates of the basis."
        v = vector(v)
        if v.shape[0] != self.ambient_dim:
            raise DimensionError(f"Vector of length {v.shape[0]} in Q^{self.ambient_dim}.")
        out = v.copy()
        for k, p in enumerate(self.pivots):
            if out[p] != 0:
                out = out - out[p] * self.basis[k]
        return out

    def contains(self, v):
        return is_zero(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v):
        "Coordinates of a member `v` against `basis`; None if `v` is outside."
        v = vector(v)
        if not self.contains(v):
            return None
        return vector([v[p] for p in self.pivots])

    def includes(self, other):
        "True iff `other` is a subspace of `self`."
        self._check(other)
        return all(self.contains(w) for w in other.basis)

    def sum(self, other):
        self._check(other)
        return Subspace(self.ambient_dim, vstack([self.basis, other.basis], self.ambient_dim))

    def __add__(self, other):
        return self.sum(other)

    def intersect(self, other):
        """
        Intersection by the Zassenhaus algorithm: row reduce
        [[A, A], [B, 0]] and keep the right halves of rows whose left half vanished.
        """
        self._check(other)
        n = self.ambient_dim
        top = zeros(self.dim, 2 * n)
        if self.dim:
            top[:, :n] = self.basis
            top[:, n:] = self.basis
        bottom = zeros(other.dim, 2 * n)
        if other.dim:
            bottom[:, :n] = other.basis
        red, pivots, r = rref(vstack([top, bottom], 2 * n))
        rows = [red[k, n:] for k in range(r) if pivots[k] >= n]
        return Subspace(n, rows)

    def __and__(self, other):
        return self.intersect(other)

    def equal(self, other):
        return self.ambient_dim == other.ambient_dim and mat_equal(self.basis, other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.equal(other)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.basis.ravel())))

    def image_under(self, m):
        "Image of this subspace under the linear map `m`."
        m = to_matrix(m)
        if m.shape[1] != self.ambient_dim:
            raise DimensionError(f"Map with {m.shape[1]} columns on Q^{self.ambient_dim}.")
        return Subspace(m.shape[0], matmul(m, self.basis.T).T if self.dim else ())

    def preimage_under(self, m):
        "{x : m x in self}."
        m = to_matrix(m)
        if m.shape[0] != self.ambient_dim:
            raise DimensionError(f"Map with {m.shape[0]} rows into Q^{self.ambient_dim}.")
        proj, _, _ = quotient(self.ambient_dim, self)
        return kernel_basis(matmul(proj, m))

    def quotient(self):
        return quotient(self.ambient_dim, self)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def quotient(ambient_dim, w):
    """
    Quotient Q^n / w with an explicit projection and section.

    The section sends quotient coordinate k to the standard basis vector of the
    k-th non-pivot column of `w`, so the choice is canonical.

    Args:
        ambient_dim (int): n
        w (:class:`Subspace`): subspace to quotient by

    Returns:
        tuple : (proj of shape (n - dim w) x n, section of shape n x (n - dim w), quotient dim)
    """
    if w.ambient_dim != ambient_dim:
        raise DimensionError(f"Subspace of Q^{w.ambient_dim} in Q^{ambient_dim}.")
    free = [c for c in range(ambient_dim) if c not in w.pivots]
    q = len(free)
    proj = zeros(q, ambient_dim)
    section = zeros(ambient_dim, q)
    for k, c in enumerate(free):
        proj[k, c] = Fraction(1)
        section[c, k] = Fraction(1)
        for row, p in enumerate(w.pivots):
            proj[k, p] = -w.basis[row, c]
    return proj, section, q
