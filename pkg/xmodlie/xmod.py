"""
Actions, crossed modules of Lie algebras and their morphisms.

All axioms are checked on basis tuples only; bilinearity makes that complete.
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
    to_matrix,
    unit,
    vector,
    zeros,
)
from .liealg import (
    LieHom,
    bracket,
    center,
    contract,
    derived_subalgebra,
    direct_sum,
    hom_check,
    is_ideal,
    is_subalgebra,
    quotient_lie,
    subalgebra_closure,
)
from .tensor_data import TensorData
from .verdict import Verdict, first_failure

logger = logging.getLogger(__name__)


class CrossedModuleError(RuntimeError):
    "Exception raised for malformed crossed modules."
    pass


class QuotientError(CrossedModuleError):
    "Raised when a pair of subspaces cannot be quotiented out."

    def __init__(self, message, condition=None, witness=()):
        super().__init__(message)
        self.condition = condition
        self.witness = tuple(witness)


class Action:
    """
    A bilinear action of `actor` on `module`:
    e_j . e_i = sum_k a[j][i][k] e_k.

    Attributes:
        actor (:class:`LieAlgebra`): N
        module (:class:`LieAlgebra`): M
        tensor (:class:`TensorData`): shape (dim N, dim M, dim M)
        a (ndarray): the same tensor as a dense object array
    """

    def __init__(self, actor, module, a):
        self.actor = actor
        self.module = module
        if isinstance(a, TensorData):
            self.tensor = a
        else:
            arr = np.asarray(a, dtype=object)
            if arr.size == 0:
                self.tensor = TensorData.zeros((actor.dim, module.dim, module.dim))
            else:
                self.tensor = TensorData.from_numpy(arr)
        if self.tensor.shape != (actor.dim, module.dim, module.dim):
            raise DimensionError(
                f"Action tensor of shape {self.tensor.shape} for {actor.name} on {module.name}."
            )
        self.a = self.tensor.to_numpy()

    @classmethod
    def zero(cls, actor, module):
        return cls(actor, module, TensorData.zeros((actor.dim, module.dim, module.dim)))

    def act(self, n, m):
        "n . m"
        return contract(self.a, n, m)

    def matrix_of(self, n):
        "Matrix of m -> n . m."
        n = vector(n)
        d = self.module.dim
        out = zeros(d, d)
        for i in range(d):
            out[:, i] = matmul(n, self.a[:, i, :]) if self.actor.dim else zeros(d)
        return out

    def is_zero(self):
        return self.tensor.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Action):
            return NotImplemented
        return self.tensor == other.tensor

    def __hash__(self):
        return hash(self.tensor)

    def __repr__(self):
        return f"Action({self.actor.name} on {self.module.name})"


def verify_action(act):
    """
    Check both action axioms on every basis triple:
    [n,n'].m = n.(n'.m) - n'.(n.m) and n.[m,m'] = [n.m,m'] + [m,n.m'].

    Returns:
        :class:`Verdict` : witness (j, j', i) or (j, i, i')
    """
    N, M, a = act.actor, act.module, act.a
    for j in range(N.dim):
        for jp in range(j + 1, N.dim):
            for i in range(M.dim):
                lhs = contract(a, N.c[j, jp], unit(M.dim, i))
                rhs = act.act(unit(N.dim, j), a[jp, i]) - act.act(unit(N.dim, jp), a[j, i])
                if not mat_equal(lhs, rhs):
                    return Verdict.failed("action-bracket", (j, jp, i), "[n,n'].m")
    for j in range(N.dim):
        for i in range(M.dim):
            for ip in range(i + 1, M.dim):
                lhs = act.act(unit(N.dim, j), M.c[i, ip])
                rhs = bracket(M, a[j, i], unit(M.dim, ip)) + bracket(M, unit(M.dim, i), a[j, ip])
                if not mat_equal(lhs, rhs):
                    return Verdict.failed("action-derivation", (j, i, ip), "n.[m,m']")
    return Verdict.passed()


class CrossedModule:
    """
    (M --boundary--> N, action).

    Attributes:
        M (:class:`LieAlgebra`)
        N (:class:`LieAlgebra`)
        boundary (:class:`LieHom`): M -> N
        action (:class:`Action`): N acting on M
    """

    def __init__(self, M, N, boundary, action, name=None):
        if boundary.source.dim != M.dim or boundary.target.dim != N.dim:
            raise DimensionError(f"Boundary {boundary!r} does not run {M.name} -> {N.name}.")
        if action.actor.dim != N.dim or action.module.dim != M.dim:
            raise DimensionError(f"{action!r} does not match {N.name} on {M.name}.")
        self.M = M
        self.N = N
        self.boundary = boundary
        self.action = action
        self.name = name or f"({M.name}->{N.name})"

    @property
    def dims(self):
        return (self.M.dim, self.N.dim)

    def __repr__(self):
        return f"CrossedModule{self.name}"


def verify_xmod(x):
    """
    Check the action axioms, that the boundary is a Lie map, equivariance
    d(n.m) = [n, dm] and the Peiffer identity d(m).m' = [m, m'].
    """
    v = first_failure(verify_action(x.action), hom_check(x.boundary))
    if not v:
        return v
    M, N, d = x.M, x.N, x.boundary
    for j in range(N.dim):
        for i in range(M.dim):
            lhs = d(x.action.a[j, i])
            rhs = bracket(N, unit(N.dim, j), d.matrix[:, i])
            if not mat_equal(lhs, rhs):
                return Verdict.failed("equivariance", (j, i), "d(n.m) != [n, dm]")
    for i in range(M.dim):
        for ip in range(M.dim):
            lhs = x.action.act(d.matrix[:, i], unit(M.dim, ip))
            if not mat_equal(lhs, M.c[i, ip]):
                return Verdict.failed("peiffer", (i, ip), "d(m).m' != [m, m']")
    return Verdict.passed()


def fixed_points(x):
    "M^N = {m : n.m = 0 for all n}."
    dN, dM = x.N.dim, x.M.dim
    if dN == 0:
        return Subspace.full(dM)
    # row (j, k), column i: a[j][i][k]
    stacked = np.transpose(x.action.a, (0, 2, 1)).reshape(dN * dM, dM)
    return kernel_basis(stacked)


def stabilizer(x):
    "st_N(M) = {n : n.m = 0 for all m}."
    dN, dM = x.N.dim, x.M.dim
    if dM == 0:
        return Subspace.full(dN)
    # row (i, k), column j: a[j][i][k]
    stacked = np.transpose(x.action.a, (1, 2, 0)).reshape(dM * dM, dN)
    return kernel_basis(stacked)


class CrossedSubmodule:
    """
    A pair of subspaces (S of M, T of N) in ambient coordinates, with the
    properties the classification needs computed eagerly.

    Attributes:
        sub_m, sub_n (:class:`Subspace`)
        subalgebras (bool): both components bracket-closed
        boundary_compatible (bool): d(S) inside T
        action_stable (bool): T . S inside S
        ideals (bool): S ideal of M and T ideal of N
        normal (bool): quotient preconditions hold (N.S in S, T.M in S, ideals)
        is_crossed_submodule (bool): subalgebras, boundary_compatible and action_stable
    """

    def __init__(self, x, sub_m, sub_n):
        self.xmod = x
        self.sub_m = sub_m
        self.sub_n = sub_n
        self.subalgebras = bool(is_subalgebra(x.M, sub_m)) and bool(is_subalgebra(x.N, sub_n))
        self.boundary_compatible = sub_n.includes(sub_m.image_under(x.boundary.matrix))
        self.action_stable = bool(_acts_into(x.action, sub_n.basis, sub_m.basis, sub_m))
        self.ideals = bool(is_ideal(x.M, sub_m)) and bool(is_ideal(x.N, sub_n))
        self.normal = (
            self.ideals
            and self.boundary_compatible
            and bool(normality(x, sub_m, sub_n))
        )
        self.is_crossed_submodule = (
            self.subalgebras and self.boundary_compatible and self.action_stable
        )

    @property
    def dims(self):
        return (self.sub_m.dim, self.sub_n.dim)

    def is_full(self):
        return self.sub_m.is_full() and self.sub_n.is_full()

    def flags(self):
        return {
            "crossed_submodule": self.is_crossed_submodule,
            "boundary_compatible": self.boundary_compatible,
            "action_stable": self.action_stable,
            "ideals": self.ideals,
            "normal": self.normal,
        }

    def __repr__(self):
        return f"CrossedSubmodule(dims={self.dims})"


def _acts_into(action, actors, modules, target):
    for j, n in enumerate(actors):
        for i, m in enumerate(modules):
            if not target.contains(action.act(n, m)):
                return Verdict.failed("action-stable", (j, i), "n.m escapes")
    return Verdict.passed()


def normality(x, I1, I2):
    "N.I1 in I1 and I2.M in I1."
    dN, dM = x.N.dim, x.M.dim
    basis_n = [unit(dN, j) for j in range(dN)]
    basis_m = [unit(dM, i) for i in range(dM)]
    v = _acts_into(x.action, basis_n, I1.basis, I1)
    if not v:
        return Verdict.failed("N.I1", v.witness, "N . I1 escapes I1")
    v = _acts_into(x.action, I2.basis, basis_m, I1)
    if not v:
        return Verdict.failed("I2.M", v.witness, "I2 . M escapes I1")
    return Verdict.passed()


def xmod_center(x):
    """
    (M^N, st_N(M) & Z(N)) with zero induced action.

    The returned flags record whether d(M^N) lands in the second component;
    this is reported per instance.
    """
    sub = CrossedSubmodule(x, fixed_points(x), stabilizer(x) & center(x.N))
    if not sub.boundary_compatible:
        logger.warning("%s: d(M^N) is not inside st_N(M) & Z(N)", x.name)
    return sub


def action_span(x):
    "span{e_j . e_i}"
    dN, dM = x.N.dim, x.M.dim
    return Subspace(dM, x.action.a.reshape(dN * dM, dM) if dN * dM else ())


def xmod_commutator(x):
    "(D_N(M), [N, N]) with D_N(M) the subalgebra generated by all n.m."
    D = subalgebra_closure(x.M, action_span(x))
    return CrossedSubmodule(x, D, derived_subalgebra(x.N))


def is_perfect_xmod(x):
    return xmod_commutator(x).is_full()


class XModMorphism:
    """
    (f1: M -> L, f2: N -> H) between crossed modules.
    """

    def __init__(self, source, target, f1, f2):
        if f1.source.dim != source.M.dim or f1.target.dim != target.M.dim:
            raise DimensionError(f"f1 {f1!r} does not match {source!r} -> {target!r}.")
        if f2.source.dim != source.N.dim or f2.target.dim != target.N.dim:
            raise DimensionError(f"f2 {f2!r} does not match {source!r} -> {target!r}.")
        self.source = source
        self.target = target
        self.f1 = f1
        self.f2 = f2

    @classmethod
    def identity(cls, x):
        return cls(x, x, LieHom.identity(x.M), LieHom.identity(x.N))

    @classmethod
    def zero(cls, source, target):
        return cls(
            source, target, LieHom.zero(source.M, target.M), LieHom.zero(source.N, target.N)
        )

    def compose(self, other):
        "self o other"
        return XModMorphism(
            other.source, self.target, self.f1.compose(other.f1), self.f2.compose(other.f2)
        )

    def kernel(self):
        return (self.f1.kernel(), self.f2.kernel())

    def is_surjective(self):
        return self.f1.is_surjective() and self.f2.is_surjective()

    def __eq__(self, other):
        if not isinstance(other, XModMorphism):
            return NotImplemented
        return self.f1 == other.f1 and self.f2 == other.f2

    def __hash__(self):
        return hash((self.f1, self.f2))

    def __repr__(self):
        return f"XModMorphism({self.source.name} -> {self.target.name})"


def xmod_morphism_check(phi):
    """
    Both components are Lie maps, f1(n.m) = f2(n) * f1(m) (XLieH1) and
    delta o f1 = f2 o d (XLieH2).
    """
    v = first_failure(hom_check(phi.f1), hom_check(phi.f2))
    if not v:
        return v
    src, tgt = phi.source, phi.target
    for j in range(src.N.dim):
        for i in range(src.M.dim):
            lhs = phi.f1(src.action.a[j, i])
            rhs = tgt.action.act(phi.f2.matrix[:, j], phi.f1.matrix[:, i])
            if not mat_equal(lhs, rhs):
                return Verdict.failed("XLieH1", (j, i), "f1(n.m) != f2(n)*f1(m)")
    lhs = matmul(tgt.boundary.matrix, phi.f1.matrix)
    rhs = matmul(phi.f2.matrix, src.boundary.matrix)
    for i in range(src.M.dim):
        if not mat_equal(lhs[:, i], rhs[:, i]):
            return Verdict.failed("XLieH2", (i,), "delta o f1 != f2 o d")
    return Verdict.passed()


class ExtensionClass:
    """
    Classification of a morphism as an extension.

    Attributes:
        extension (bool): both components surjective
        central (bool or None): kernel inside the (braided, when attached) center
        compatible_central (bool or None): kernel inside the crossed module center
        subspaces (dict): kernels and the center components used, by name
    """

    def __init__(self, extension, central=None, compatible_central=None, subspaces=None):
        self.extension = extension
        self.central = central
        self.compatible_central = compatible_central
        self.subspaces = subspaces or {}

    def dims(self):
        return {k: v.dim for k, v in self.subspaces.items()}

    def to_dict(self):
        out = {"extension": self.extension}
        if self.extension:
            if self.central is not None:
                out["central"] = self.central
            if self.compatible_central is not None:
                out["compatible_central"] = self.compatible_central
        out["dims"] = self.dims()
        return out

    def __repr__(self):
        return (
            f"ExtensionClass(extension={self.extension}, central={self.central}, "
            f"compatible_central={self.compatible_central})"
        )


def classify_xmod_extension(phi):
    """
    Extension iff both components are surjective; central iff
    ker f1 in M^N and ker f2 in st_N(M) & Z(N) of the source.
    """
    k1, k2 = phi.kernel()
    src = phi.source
    fixed = fixed_points(src)
    base = stabilizer(src) & center(src.N)
    subspaces = {"ker_f1": k1, "ker_f2": k2, "fixed_points": fixed, "st_cap_center": base}
    if not phi.is_surjective():
        return ExtensionClass(False, subspaces=subspaces)
    central = fixed.includes(k1) and base.includes(k2)
    return ExtensionClass(True, central=central, subspaces=subspaces)


def product_xmod(x, y, name=None):
    """
    Componentwise product x * y.

    Returns:
        tuple : (product, projection to x, projection to y, inclusion of x, inclusion of y)
    """
    M, inc_m1, inc_m2, pr_m1, pr_m2 = direct_sum(x.M, y.M)
    N, inc_n1, inc_n2, pr_n1, pr_n2 = direct_sum(x.N, y.N)
    d = zeros(N.dim, M.dim)
    if x.N.dim and x.M.dim:
        d[: x.N.dim, : x.M.dim] = x.boundary.matrix
    if y.N.dim and y.M.dim:
        d[x.N.dim:, x.M.dim:] = y.boundary.matrix
    a = np.empty((N.dim, M.dim, M.dim), dtype=object)
    a.fill(Fraction(0))
    if x.N.dim and x.M.dim:
        a[: x.N.dim, : x.M.dim, : x.M.dim] = x.action.a
    if y.N.dim and y.M.dim:
        a[x.N.dim:, x.M.dim:, x.M.dim:] = y.action.a
    P = CrossedModule(
        M, N, LieHom(M, N, d), Action(N, M, a), name=name or f"{x.name}x{y.name}"
    )
    return (
        P,
        XModMorphism(P, x, pr_m1, pr_n1),
        XModMorphism(P, y, pr_m2, pr_n2),
        XModMorphism(x, P, inc_m1, inc_n1),
        XModMorphism(y, P, inc_m2, inc_n2),
    )


def check_quotient_pair(x, I1, I2):
    """
    Preconditions for x / (I1, I2): ideals, d(I1) in I2, N.I1 in I1, I2.M in I1.

    Raises:
        QuotientError : naming the failed condition and its witness
    """
    for L, I, label in ((x.M, I1, "I1 ideal of M"), (x.N, I2, "I2 ideal of N")):
        v = is_ideal(L, I)
        if not v:
            raise QuotientError(f"{x.name}: {label} fails", label, v.witness)
    if not I2.includes(I1.image_under(x.boundary.matrix)):
        raise QuotientError(f"{x.name}: d(I1) not inside I2", "d(I1) in I2")
    v = normality(x, I1, I2)
    if not v:
        raise QuotientError(f"{x.name}: {v.detail}", v.axiom, v.witness)


def quotient_xmod(x, I1, I2, name=None):
    """
    x / (I1, I2) with induced boundary and action.

    Returns:
        tuple : (quotient crossed module, projection :class:`XModMorphism`)
    """
    check_quotient_pair(x, I1, I2)
    QM, pm = quotient_lie(x.M, I1, name=f"{x.M.name}/I1")
    QN, pn = quotient_lie(x.N, I2, name=f"{x.N.name}/I2")
    _, sec_m, _ = quotient(x.M.dim, I1)
    _, sec_n, _ = quotient(x.N.dim, I2)
    d = matmul(pn.matrix, matmul(x.boundary.matrix, sec_m))
    a = np.empty((QN.dim, QM.dim, QM.dim), dtype=object)
    a.fill(Fraction(0))
    for p in range(QN.dim):
        for q in range(QM.dim):
            a[p, q] = pm(x.action.act(sec_n[:, p], sec_m[:, q]))
    Q = CrossedModule(QM, QN, LieHom(QM, QN, to_matrix(d, shape=(QN.dim, QM.dim))),
                      Action(QN, QM, a), name=name or f"{x.name}/I")
    logger.debug("quotient of %s has dims %s", x.name, Q.dims)
    return Q, XModMorphism(x, Q, pm, pn)


def kernels_zero(phi):
    k1, k2 = phi.kernel()
    return k1.is_zero() and k2.is_zero()


def is_zero_morphism(phi):
    return is_zero(phi.f1.matrix) and is_zero(phi.f2.matrix)
