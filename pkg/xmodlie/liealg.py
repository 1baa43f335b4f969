"""
Finite-dimensional Lie algebras over Q given by structure constants.
"""

from fractions import Fraction
import logging

import numpy as np

from .exactla import (
    DimensionError,
    Subspace,
    is_zero,
    kernel_basis,
    mat_equal,
    matmul,
    quotient,
    identity,
    image,
    rank,
    to_matrix,
    unit,
    vector,
    zeros,
)
from .operators import rational
from .tensor_data import TensorData
from .verdict import Verdict

logger = logging.getLogger(__name__)


class LieAlgebraError(RuntimeError):
    "Exception raised for malformed Lie algebras."
    pass


class NotAnIdealError(LieAlgebraError):
    "Raised when a quotient is asked for by a subspace that is not an ideal."

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


def _structure(c, dim=None):
    if isinstance(c, TensorData):
        return c
    arr = np.asarray(c, dtype=object)
    if arr.size == 0:
        d = dim if dim is not None else 0
        return TensorData.zeros((d, d, d))
    return TensorData.from_numpy(arr)


class LieAlgebra:
    """
    A Lie algebra with basis e_0 ... e_{dim-1} and brackets
    [e_i, e_j] = sum_k c[i][j][k] e_k.

    Attributes:
        dim (int): dimension
        name (str): label used in reports
        tensor (:class:`TensorData`): structure constants, shape (dim, dim, dim)
        c (ndarray): the same constants as a dense object array
        basis_names (list of str): labels for the basis vectors
    """

    def __init__(self, structure, name="L", basis_names=None, dim=None):
        self.tensor = _structure(structure, dim)
        shape = self.tensor.shape
        if len(shape) != 3 or not (shape[0] == shape[1] == shape[2]):
            raise DimensionError(f"Structure tensor of shape {shape} is not cubic.")
        self.dim = shape[0]
        self.c = self.tensor.to_numpy()
        self.name = name
        if basis_names is None:
            basis_names = [f"e{i + 1}" for i in range(self.dim)]
        if len(basis_names) != self.dim:
            raise DimensionError(f"{len(basis_names)} basis names for dimension {self.dim}.")
        self.basis_names = list(basis_names)
        # (i*dim + j, k) -> c[i][j][k]
        self._flat = self.c.reshape(self.dim * self.dim, self.dim)

    @classmethod
    def abelian(cls, n, name=None):
        return cls(TensorData.zeros((n, n, n)), name=name or f"K{n}")

    @classmethod
    def from_brackets(cls, dim, brackets, name="L", basis_names=None):
        """
        Build from sparse ``(i, j, k, value)`` triples, 0-based, with
        antisymmetric completion.

        Raises:
            LieAlgebraError : when an entry and its mirror disagree
        """
        given = {}
        for i, j, k, v in brackets:
            i, j, k = int(i), int(j), int(k)
            for ix in (i, j, k):
                if not 0 <= ix < dim:
                    raise LieAlgebraError(f"Basis index {ix} outside dimension {dim}.")
            given[(i, j, k)] = given.get((i, j, k), Fraction(0)) + rational(v)
        t = TensorData.zeros((dim, dim, dim))
        for (i, j, k), v in given.items():
            if i == j and v != 0:
                raise LieAlgebraError(f"[e{i + 1},e{i + 1}] must vanish, got {v} e{k + 1}.")
            mirror = given.get((j, i, k))
            if mirror is not None and mirror != -v:
                raise LieAlgebraError(
                    f"Conflicting entries for [e{i + 1},e{j + 1}] and [e{j + 1},e{i + 1}] "
                    f"along e{k + 1}: {v} and {mirror}."
                )
            t.set((i, j, k), v)
            t.set((j, i, k), -v)
        return cls(t, name=name, basis_names=basis_names)

    def _vec(self, x):
        x = vector(x)
        if x.shape[0] != self.dim:
            raise DimensionError(f"Vector of length {x.shape[0]} in {self.name} of dim {self.dim}.")
        return x

    def bracket(self, x, y):
        "[x, y] by bilinear contraction against the structure constants."
        return bracket(self, x, y)

    def ad(self, x):
        "Matrix of y -> [x, y]."
        x = self._vec(x)
        out = zeros(self.dim, self.dim)
        for j in range(self.dim):
            out[:, j] = matmul(x, self.c[:, j, :])
        return out

    def is_abelian(self):
        return self.tensor.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.tensor == other.tensor

    def __hash__(self):
        return hash((self.dim, self.tensor))

    def __repr__(self):
        return f"LieAlgebra({self.name}, dim={self.dim})"


def verify_lie(c):
    """
    Check antisymmetry and the Jacobi identity on every basis triple.

    Args:
        c (LieAlgebra, TensorData or array): structure constants

    Returns:
        :class:`Verdict` : pass, or the first violated axiom with 0-based indices
    """
    if isinstance(c, LieAlgebra):
        c = c.tensor
    t = _structure(c)
    if len(t.shape) != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
        return Verdict.failed("shape", (), f"Structure tensor of shape {t.shape}.")
    d = t.shape[0]
    swapped = t.permute(1, 0, 2)
    for i in range(d):
        for j in range(i, d):
            for k in range(d):
                if t.get((i, j, k)) + swapped.get((i, j, k)) != 0:
                    return Verdict.failed(
                        "antisymmetry", (i, j), f"[e{i + 1},e{j + 1}] + [e{j + 1},e{i + 1}] != 0"
                    )
    arr = t.to_numpy()

    def br(x, y):
        return contract(arr, x, y)

    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                ei, ej, ek = unit(d, i), unit(d, j), unit(d, k)
                total = br(ei, arr[j, k]) + br(ej, arr[k, i]) + br(ek, arr[i, j])
                if not is_zero(total):
                    return Verdict.failed("jacobi", (i, j, k), "cyclic sum of brackets != 0")
    return Verdict.passed()


def contract(c, x, y):
    "sum_ij x_i y_j c[i][j][.] for any 3-tensor c."
    p, q, r = c.shape
    if p * q == 0:
        return zeros(r)
    xy = np.outer(vector(x), vector(y)).reshape(p * q)
    return matmul(xy, c.reshape(p * q, r))


def bracket(L, x, y):
    """
    Lie bracket of coordinate vectors.

    Raises:
        DimensionError : vector length differs from dim L
    """
    x = L._vec(x)
    y = L._vec(y)
    return contract(L.c, x, y)


def derived_subalgebra(L):
    "[L, L], the span of all basis brackets (already an ideal)."
    return Subspace(L.dim, L._flat)


def center(L):
    "Z(L): kernel of x -> ([x, e_j])_j."
    d = L.dim
    # row (j, k), column i: c[i][j][k]
    stacked = np.transpose(L.c, (1, 2, 0)).reshape(d * d, d) if d else zeros(0, 0)
    return kernel_basis(stacked)


def subalgebra_closure(L, seed):
    """
    Smallest bracket-closed subspace containing `seed`.

    Iterates span plus brackets of basis vectors until the dimension stops
    growing; at most dim L rounds.
    """
    if seed.ambient_dim != L.dim:
        raise DimensionError(f"Seed in Q^{seed.ambient_dim} for {L.name} of dim {L.dim}.")
    current = seed
    for _ in range(L.dim + 1):
        vecs = list(current.basis)
        for a in range(current.dim):
            for b in range(a + 1, current.dim):
                vecs.append(bracket(L, current.basis[a], current.basis[b]))
        grown = Subspace(L.dim, vecs)
        if grown.dim == current.dim:
            return current
        current = grown
    return current


def is_subalgebra(L, sub):
    for a in range(sub.dim):
        for b in range(a + 1, sub.dim):
            if not sub.contains(bracket(L, sub.basis[a], sub.basis[b])):
                return Verdict.failed("subalgebra", (a, b), "bracket of basis vectors escapes")
    return Verdict.passed()


def is_ideal(L, sub):
    "[L, sub] within sub; witness is (basis index of L, basis row of sub)."
    for i in range(L.dim):
        for a in range(sub.dim):
            if not sub.contains(bracket(L, unit(L.dim, i), sub.basis[a])):
                return Verdict.failed("ideal", (i, a), f"[e{i + 1}, w{a + 1}] escapes")
    return Verdict.passed()


class LieHom:
    """
    A linear map between Lie algebras, expected to preserve brackets.

    Attributes:
        source (:class:`LieAlgebra`)
        target (:class:`LieAlgebra`)
        matrix (ndarray): target.dim x source.dim
    """

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = to_matrix(matrix, shape=(target.dim, source.dim))
        if self.matrix.shape != (target.dim, source.dim):
            raise DimensionError(
                f"Matrix of shape {self.matrix.shape} for {source.name} -> {target.name} "
                f"({target.dim} x {source.dim})."
            )

    @classmethod
    def identity(cls, L):
        return cls(L, L, identity(L.dim))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, zeros(target.dim, source.dim))

    def __call__(self, x):
        return matmul(self.matrix, vector(x))

    def compose(self, other):
        "self o other"
        if other.target.dim != self.source.dim:
            raise DimensionError(f"Cannot compose {self!r} after {other!r}.")
        return LieHom(other.source, self.target, matmul(self.matrix, other.matrix))

    def kernel(self):
        return kernel_basis(self.matrix)

    def image(self):
        return image(self.matrix)

    def is_surjective(self):
        return rank(self.matrix) == self.target.dim

    def is_injective(self):
        return rank(self.matrix) == self.source.dim

    def __eq__(self, other):
        if not isinstance(other, LieHom):
            return NotImplemented
        return mat_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(tuple(self.matrix.ravel()))

    def __repr__(self):
        return f"LieHom({self.source.name} -> {self.target.name})"


def hom_check(f):
    "f[x, y] = [f x, f y] on every basis pair."
    if f.matrix.shape != (f.target.dim, f.source.dim):
        return Verdict.failed("shape", (), f"matrix shape {f.matrix.shape}")
    S = f.source
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            lhs = f(S.c[i, j])
            rhs = bracket(f.target, f.matrix[:, i], f.matrix[:, j])
            if not mat_equal(lhs, rhs):
                return Verdict.failed("bracket-preservation", (i, j), f"{f!r}")
    return Verdict.passed()


def quotient_lie(L, ideal, name=None):
    """
    L / ideal with constants induced through the canonical section.

    Returns:
        tuple : (quotient :class:`LieAlgebra`, surjective :class:`LieHom` projection)

    Raises:
        NotAnIdealError : [L, ideal] is not inside ideal
    """
    v = is_ideal(L, ideal)
    if not v:
        raise NotAnIdealError(
            f"Subspace of dim {ideal.dim} is not an ideal of {L.name}: {v.detail}", v.witness
        )
    proj, section, q = quotient(L.dim, ideal)
    t = TensorData.zeros((q, q, q))
    for p in range(q):
        for r in range(q):
            val = matmul(proj, bracket(L, section[:, p], section[:, r]))
            for k in range(q):
                t.set((p, r, k), val[k])
    Q = LieAlgebra(t, name=name or f"{L.name}/I")
    logger.debug("quotient %s by ideal of dim %d -> dim %d", L.name, ideal.dim, q)
    return Q, LieHom(L, Q, proj)


def adjoint_action(L):
    "The action e_j . e_i = [e_j, e_i]."
    from .xmod import Action

    return Action(L, L, L.c.copy())


def direct_sum(A, B, name=None):
    """
    A x B with componentwise bracket.

    Returns:
        tuple : (sum algebra, inclusion of A, inclusion of B, projection to A, projection to B)
    """
    d = A.dim + B.dim
    arr = np.empty((d, d, d), dtype=object)
    arr.fill(Fraction(0))
    if A.dim:
        arr[: A.dim, : A.dim, : A.dim] = A.c
    if B.dim:
        arr[A.dim:, A.dim:, A.dim:] = B.c
    S = LieAlgebra(arr, name=name or f"{A.name}x{B.name}", dim=d)
    inc_a = zeros(d, A.dim)
    inc_b = zeros(d, B.dim)
    for i in range(A.dim):
        inc_a[i, i] = Fraction(1)
    for i in range(B.dim):
        inc_b[A.dim + i, i] = Fraction(1)
    return (
        S,
        LieHom(A, S, inc_a),
        LieHom(B, S, inc_b),
        LieHom(S, A, inc_a.T.copy()),
        LieHom(S, B, inc_b.T.copy()),
    )
