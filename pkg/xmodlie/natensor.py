"""
Non-abelian tensor product M (x) N of two Lie algebras acting on each other.

The ambient space has one basis symbol e_i (x) e_j per pair, ordered row-major
(i major, j minor). The product is that space modulo the relation subspace W.
"""

from fractions import Fraction
import logging

import numpy as np

from .exactla import (
    DimensionError,
    Subspace,
    mat_equal,
    matmul,
    quotient,
    rank,
    to_matrix,
    unit,
    vector,
    zeros,
)
from .liealg import LieAlgebra, LieHom, contract, hom_check, verify_lie
from .verdict import Verdict

logger = logging.getLogger(__name__)


class TensorProductError(RuntimeError):
    """
    Exception raised when a tensor product or a map out of it is not well defined.

    Attributes:
        condition (str): name of the failed condition
        witness (tuple): indices or relation label locating the failure
    """

    def __init__(self, message, condition=None, witness=()):
        super().__init__(message)
        self.condition = condition
        self.witness = tuple(witness)


def vec(m, n):
    "Vectorization of m (x) n in the ambient symbol space."
    return np.outer(vector(m), vector(n)).ravel()


class TensorPresentation:
    """
    M (x) N presented by generators and relations.

    Attributes:
        left (:class:`LieAlgebra`): M
        right (:class:`LieAlgebra`): N
        act_MN (:class:`Action`): M acting on N, written m . n
        act_NM (:class:`Action`): N acting on M, written n * m
        ambient_dim (int): dim M * dim N
        relations (list): (label, vector) for every generating relation
        W (:class:`Subspace`): span of the relations
        quotient (:class:`LieAlgebra`): the product as a Lie algebra
        proj (ndarray): ambient -> quotient coordinates
        section (ndarray): quotient coordinates -> ambient
    """

    def __init__(self, left, right, act_MN, act_NM, relations, W, quotient_algebra, proj, section):
        self.left = left
        self.right = right
        self.act_MN = act_MN
        self.act_NM = act_NM
        self.ambient_dim = left.dim * right.dim
        self.relations = relations
        self.W = W
        self.quotient = quotient_algebra
        self.proj = proj
        self.section = section

    @property
    def dim(self):
        return self.quotient.dim

    def symbol(self, i, j):
        return i * self.right.dim + j

    def symbols(self):
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                yield i, j

    def pure(self, m, n):
        return pure_tensor(self, m, n)

    def __repr__(self):
        return f"TensorPresentation({self.left.name} (x) {self.right.name}, dim={self.dim})"


def relation_vectors(M, N, act_MN, act_NM):
    """
    Generating relations of M (x) N on basis tuples.

    R1(i,i',j) = [e_i,e_i'] (x) e_j - e_i (x) (e_i'.e_j) + e_i' (x) (e_i.e_j)
    R2(i,j,j') = e_i (x) [e_j,e_j'] - (e_j'*e_i) (x) e_j + (e_j*e_i) (x) e_j'

    Returns:
        list : (label, vector) with labels ("R1", i, i', j) and ("R2", i, j, j')
    """
    dM, dN = M.dim, N.dim
    out = []
    for i in range(dM):
        for ip in range(dM):
            for j in range(dN):
                ej = unit(dN, j)
                r = (
                    vec(M.c[i, ip], ej)
                    - vec(unit(dM, i), act_MN.a[ip, j])
                    + vec(unit(dM, ip), act_MN.a[i, j])
                )
                out.append((("R1", i, ip, j), r))
    for i in range(dM):
        ei = unit(dM, i)
        for j in range(dN):
            for jp in range(dN):
                r = (
                    vec(ei, N.c[j, jp])
                    - vec(act_NM.a[jp, i], unit(dN, j))
                    + vec(act_NM.a[j, i], unit(dN, jp))
                )
                out.append((("R2", i, j, jp), r))
    return out


def relation_matrix(M, N, act_MN, act_NM):
    "All relation vectors stacked as rows."
    rows = [r for _, r in relation_vectors(M, N, act_MN, act_NM)]
    return to_matrix(rows, shape=(0, M.dim * N.dim))


def symbol_bracket(M, N, act_MN, act_NM, i, j, ip, jp):
    "[(e_i (x) e_j), (e_i' (x) e_j')] = -(e_j * e_i) (x) (e_i' . e_j')"
    return -vec(act_NM.a[j, i], act_MN.a[ip, jp])


def _bracket_tensor(M, N, act_MN, act_NM):
    amb = M.dim * N.dim
    out = np.empty((amb, amb, amb), dtype=object)
    out.fill(Fraction(0))
    for i in range(M.dim):
        for j in range(N.dim):
            a = i * N.dim + j
            for ip in range(M.dim):
                for jp in range(N.dim):
                    out[a, ip * N.dim + jp] = symbol_bracket(M, N, act_MN, act_NM, i, j, ip, jp)
    return out


def build_nonabelian_tensor(M, N, act_MN, act_NM, name=None):
    """
    Build M (x) N as a Lie algebra.

    Args:
        M, N (:class:`LieAlgebra`): the factors
        act_MN (:class:`Action`): M acting on N
        act_NM (:class:`Action`): N acting on M
        name (str, optional): name of the quotient algebra

    Returns:
        :class:`TensorPresentation`

    Raises:
        TensorProductError : if an action has the wrong actor or module, fails
            its axioms, the bracket does not descend to the quotient, or the
            quotient is not a Lie algebra
    """
    from .xmod import verify_action

    for label, act, actor, module in (("act_MN", act_MN, M, N), ("act_NM", act_NM, N, M)):
        if act.actor != actor or act.module != module:
            logger.warning("%s acts by %s on %s", label, act.actor.name, act.module.name)
            raise TensorProductError(
                f"{label} must be an action of {actor.name} on {module.name}, "
                f"got {act.actor.name} on {act.module.name}",
                label,
                (act.actor.dim, act.module.dim),
            )
    for label, act in (("act_MN", act_MN), ("act_NM", act_NM)):
        v = verify_action(act)
        if not v:
            logger.warning("%s fails %s at %s", label, v.axiom, v.witness)
            raise TensorProductError(f"{label} is not an action: {v.axiom}", label, v.witness)
    amb = M.dim * N.dim
    relations = relation_vectors(M, N, act_MN, act_NM)
    W = Subspace(amb, [r for _, r in relations])
    logger.debug("%s (x) %s: ambient %d, relations span %d", M.name, N.name, amb, W.dim)

    T = _bracket_tensor(M, N, act_MN, act_NM)
    for row, w in enumerate(W.basis):
        for a in range(amb):
            e = unit(amb, a)
            if not W.contains(contract(T, w, e)):
                raise TensorProductError(
                    "bracket does not descend: [W, generator] escapes W", "W-left", (row, a)
                )
            if not W.contains(contract(T, e, w)):
                raise TensorProductError(
                    "bracket does not descend: [generator, W] escapes W", "W-right", (a, row)
                )

    proj, section, q = quotient(amb, W)
    c = np.empty((q, q, q), dtype=object)
    c.fill(Fraction(0))
    for p in range(q):
        for pp in range(q):
            c[p, pp] = matmul(proj, contract(T, section[:, p], section[:, pp]))
    v = verify_lie(c)
    if not v:
        logger.warning("%s (x) %s: quotient fails %s", M.name, N.name, v.axiom)
        raise TensorProductError(f"quotient is not a Lie algebra: {v.axiom}", v.axiom, v.witness)
    Q = LieAlgebra(c, name=name or f"{M.name}(x){N.name}", dim=q)
    return TensorPresentation(M, N, act_MN, act_NM, relations, W, Q, proj, section)


def pure_tensor(tp, m, n):
    "m (x) n in quotient coordinates."
    m, n = vector(m), vector(n)
    if m.shape[0] != tp.left.dim or n.shape[0] != tp.right.dim:
        raise DimensionError(
            f"Pure tensor of lengths {m.shape[0]}, {n.shape[0]} in {tp.left.dim} (x) {tp.right.dim}."
        )
    if tp.dim == 0:
        return zeros(0)
    return matmul(tp.proj, vec(m, n))


def symbol_map(f, g):
    "Ambient map e_i (x) e_j -> f(e_i) (x) g(e_j)."
    fm, gm = f.matrix, g.matrix
    out = zeros(fm.shape[0] * gm.shape[0], fm.shape[1] * gm.shape[1])
    for i in range(fm.shape[1]):
        for j in range(gm.shape[1]):
            out[:, i * gm.shape[1] + j] = vec(fm[:, i], gm[:, j])
    return out


def equivariance_check(tp_src, tp_tgt, f, g):
    "f(n * m) = g(n) * f(m) and g(m . n) = f(m) . g(n) on basis pairs."
    M, N = tp_src.left, tp_src.right
    for j in range(N.dim):
        for i in range(M.dim):
            lhs = f(tp_src.act_NM.a[j, i])
            rhs = tp_tgt.act_NM.act(g.matrix[:, j], f.matrix[:, i])
            if not mat_equal(lhs, rhs):
                return Verdict.failed("equivariance-NM", (j, i))
    for i in range(M.dim):
        for j in range(N.dim):
            lhs = g(tp_src.act_MN.a[i, j])
            rhs = tp_tgt.act_MN.act(f.matrix[:, i], g.matrix[:, j])
            if not mat_equal(lhs, rhs):
                return Verdict.failed("equivariance-MN", (i, j))
    return Verdict.passed()


def induced_hom(tp_src, tp_tgt, f, g):
    """
    f (x) g between two tensor products.

    Args:
        tp_src (:class:`TensorPresentation`): M (x) N
        tp_tgt (:class:`TensorPresentation`): M' (x) N'
        f (:class:`LieHom`): M -> M'
        g (:class:`LieHom`): N -> N'

    Returns:
        :class:`LieHom` : on the quotients

    Raises:
        TensorProductError : on an equivariance or W-containment failure
    """
    v = equivariance_check(tp_src, tp_tgt, f, g)
    if not v:
        raise TensorProductError(f"maps are not equivariant: {v.axiom}", v.axiom, v.witness)
    S = symbol_map(f, g)
    for label, r in tp_src.relations:
        if not tp_tgt.W.contains(matmul(S, r)):
            raise TensorProductError("relation image escapes W", "W-containment", label)
    m = matmul(tp_tgt.proj, matmul(S, tp_src.section))
    h = LieHom(tp_src.quotient, tp_tgt.quotient, to_matrix(m, shape=(tp_tgt.dim, tp_src.dim)))
    v = hom_check(h)
    if not v:
        raise TensorProductError("induced map is not a Lie map", v.axiom, v.witness)
    if f.is_surjective() and g.is_surjective() and rank(h.matrix) != tp_tgt.dim:
        raise TensorProductError("induced map of surjections is not surjective", "surjective")
    return h


class GeneratorMap:
    """
    A map out of a tensor product given by its values on basis symbols.

    Attributes:
        source (:class:`TensorPresentation`)
        target (:class:`LieAlgebra`)
        on_generators (ndarray): target.dim x ambient_dim, one column per symbol
        hom (:class:`LieHom`): the induced map on the quotient
    """

    def __init__(self, source, target, on_generators, hom):
        self.source = source
        self.target = target
        self.on_generators = on_generators
        self.hom = hom

    def __call__(self, x):
        return self.hom(x)

    @property
    def matrix(self):
        return self.hom.matrix


def generator_map(tp, values, target, lie=True):
    """
    The map e_i (x) e_j -> values[(i, j)], checked to vanish on every relation.

    Args:
        tp (:class:`TensorPresentation`): source
        values: dict (i, j) -> vector, or matrix with one column per symbol
        target (:class:`LieAlgebra`): codomain
        lie (bool): also check bracket preservation on quotient basis pairs

    Returns:
        :class:`GeneratorMap`

    Raises:
        TensorProductError : naming the violated relation, or the bracket pair
    """
    if isinstance(values, dict):
        gens = zeros(target.dim, tp.ambient_dim)
        for (i, j), v in values.items():
            gens[:, tp.symbol(i, j)] = vector(v)
    else:
        gens = to_matrix(values, shape=(target.dim, tp.ambient_dim))
    if gens.shape != (target.dim, tp.ambient_dim):
        raise DimensionError(f"Generator values of shape {gens.shape} for {tp!r} -> {target.name}.")
    for label, r in tp.relations:
        if not all(x == 0 for x in matmul(gens, r)):
            logger.warning("generator map into %s violates %s", target.name, label)
            raise TensorProductError(f"map does not vanish on {label}", "relation", label)
    m = matmul(gens, tp.section)
    h = LieHom(tp.quotient, target, to_matrix(m, shape=(target.dim, tp.dim)))
    if lie:
        v = hom_check(h)
        if not v:
            raise TensorProductError("map does not preserve brackets", v.axiom, v.witness)
    return GeneratorMap(tp, target, gens, h)


def bilinear_map(tp, fn, target, lie=True):
    "generator_map with values fn(e_i, e_j)."
    dM, dN = tp.left.dim, tp.right.dim
    values = {(i, j): fn(unit(dM, i), unit(dN, j)) for i in range(dM) for j in range(dN)}
    return generator_map(tp, values, target, lie=lie)


def induced_derivation(tp, A, B):
    """
    The linear map on the quotient induced by A (x) 1 + 1 (x) B.

    Args:
        A (matrix): endomorphism of the left factor
        B (matrix): endomorphism of the right factor

    Returns:
        ndarray : tp.dim x tp.dim matrix

    Raises:
        TensorProductError : if A (x) 1 + 1 (x) B does not preserve W
    """
    A, B = to_matrix(A), to_matrix(B)
    dM, dN = tp.left.dim, tp.right.dim
    D = zeros(tp.ambient_dim, tp.ambient_dim)
    for i in range(dM):
        for j in range(dN):
            D[:, tp.symbol(i, j)] = vec(A[:, i], unit(dN, j)) + vec(unit(dM, i), B[:, j])
    for row, w in enumerate(tp.W.basis):
        if not tp.W.contains(matmul(D, w)):
            raise TensorProductError("derivation does not preserve W", "W-stable", (row,))
    if tp.dim == 0:
        return zeros(0, 0)
    return matmul(tp.proj, matmul(D, tp.section))


def tensor_dim_oracle(M, N, act_MN, act_NM):
    "dim M * dim N minus the rank of the stacked relation matrix."
    return M.dim * N.dim - rank(relation_matrix(M, N, act_MN, act_NM))
