"""
Universal central extensions of braided crossed modules.

Two constructions are provided: the tensor square (N (x) N =id=> N (x) N)
mapping onto a perfect braided crossed module, and the compatible one
(N (x) M -> N (x) N) for crossed modules that are perfect as crossed modules.
Each claim the constructions depend on is re-checked when `verify` is set.
"""

from fractions import Fraction
import logging

import numpy as np

from .braid import (
    BraidedMorphism,
    BraidedXMod,
    Braiding,
    braided_center_subspace,
    braided_commutator,
    braided_morphism_check,
    classify_braided_extension,
    is_perfect_braided,
    verify_braiding,
)
from .exactla import identity, mat_equal, matmul, solve_columns, unit
from .liealg import LieHom, adjoint_action, bracket, center, derived_subalgebra
from .natensor import (
    bilinear_map,
    build_nonabelian_tensor,
    induced_derivation,
    induced_hom,
    pure_tensor,
)
from .verdict import Verdict
from .xmod import (
    Action,
    CrossedModule,
    fixed_points,
    is_perfect_xmod,
    stabilizer,
    xmod_commutator,
)

logger = logging.getLogger(__name__)


class ConstructionError(RuntimeError):
    """
    Exception raised when a claim a construction relies on fails.

    Attributes:
        claim (str): the claim that failed
        axiom (str): failing axiom or condition, if any
        witness (tuple): indices locating the failure
    """

    def __init__(self, claim, axiom=None, witness=()):
        super().__init__(f"{claim}" + (f" ({axiom} at {tuple(witness)})" if axiom else ""))
        self.claim = claim
        self.axiom = axiom
        self.witness = tuple(witness)


class NotPerfectError(ConstructionError):
    "Raised when a construction needs a perfect input."
    pass


def _require(ok, claim, axiom=None, witness=()):
    if isinstance(ok, Verdict):
        axiom, witness = ok.axiom, ok.witness
    if not ok:
        logger.warning("claim failed: %s (%s %s)", claim, axiom, witness)
        raise ConstructionError(claim, axiom, witness)


class TensorSquare(BraidedXMod):
    """
    A braided crossed module built on a tensor product.

    Attributes:
        presentation (:class:`TensorPresentation`): the tensor product underneath
    """

    def __init__(self, xmod, braiding, presentation, name=None):
        super().__init__(xmod, braiding, name=name)
        self.presentation = presentation


def tensor_square_braided(N, verify=True):
    """
    (N (x) N =id=> N (x) N) with the adjoint action and the bracket as braiding.
    """
    adj = adjoint_action(N)
    tp = build_nonabelian_tensor(N, N, adj, adj, name=f"{N.name}(x){N.name}")
    L = tp.quotient
    x = CrossedModule(L, L, LieHom.identity(L), adjoint_action(L), name=f"({L.name}=id=>{L.name})")
    bx = TensorSquare(x, Braiding(x, L.c.copy()), tp)
    if verify:
        _require(verify_braiding(bx), "tensor square is a braided crossed module")
    logger.debug("tensor square of %s has dim %d", N.name, L.dim)
    return bx


def tensor_square_xmod(M, verify=True):
    """
    (M (x) M --d--> M) with d(m (x) m') = [m, m'], M acting by derivations
    and braiding {m, m'} = m (x) m'.
    """
    adj = adjoint_action(M)
    tp = build_nonabelian_tensor(M, M, adj, adj, name=f"{M.name}(x){M.name}")
    T = tp.quotient
    d = bilinear_map(tp, M.bracket, M).hom
    a = np.empty((M.dim, T.dim, T.dim), dtype=object)
    a.fill(Fraction(0))
    for k in range(M.dim):
        ad = M.ad(unit(M.dim, k))
        D = induced_derivation(tp, ad, ad)
        for i in range(T.dim):
            a[k, i] = D[:, i]
    b = np.empty((M.dim, M.dim, T.dim), dtype=object)
    b.fill(Fraction(0))
    for j in range(M.dim):
        for jp in range(M.dim):
            b[j, jp] = pure_tensor(tp, unit(M.dim, j), unit(M.dim, jp))
    x = CrossedModule(T, M, d, Action(M, T, a), name=f"({T.name}->{M.name})")
    bx = TensorSquare(x, Braiding(x, b), tp)
    if verify:
        _require(verify_braiding(bx), "tensor square crossed module is braided")
    return bx


def build_phi(bx, verify=True, square=None):
    """
    Phi = (Phi1, Phi2) from the tensor square of N onto bx:
    Phi1(n (x) n') = {n, n'} and Phi2(n (x) n') = [n, n'].

    Args:
        bx (:class:`BraidedXMod`): a verified braided crossed module
        verify (bool): re-check images, kernels and the morphism axioms
        square (:class:`TensorSquare`, optional): reuse a built tensor square of N

    Returns:
        :class:`BraidedMorphism`

    Raises:
        ConstructionError : if any re-checked claim fails
    """
    square = square or tensor_square_braided(bx.N, verify=verify)
    tp = square.presentation
    phi1 = bilinear_map(tp, bx.braid, bx.M).hom
    phi2 = bilinear_map(tp, bx.N.bracket, bx.N).hom
    phi = BraidedMorphism(square, bx, phi1, phi2)
    if verify:
        _require(braided_morphism_check(phi), "Phi is a braided morphism")
        _require(phi1.image() == braided_commutator(bx).sub_m, "im Phi1 = B_N(M)")
        _require(phi2.image() == derived_subalgebra(bx.N), "im Phi2 = [N, N]")
        _require(fixed_points(square.xmod).includes(phi1.kernel()), "ker Phi1 is fixed")
        _require(
            braided_center_subspace(square).includes(phi2.kernel()),
            "ker Phi2 inside the braided center",
        )
    return phi


class UCEResult:
    """
    Outcome of :func:`universal_central_extension`.

    Attributes:
        kind (str): "uce" or "not_perfect"
        source (:class:`TensorSquare`): set when kind is "uce"
        phi (:class:`BraidedMorphism`): set when kind is "uce"
        kernels (tuple): (ker Phi1, ker Phi2) when kind is "uce"
        certificate (dict): failing condition -> codimension, when not perfect
        classification (:class:`ExtensionClass`): classification of phi
    """

    def __init__(self, kind, source=None, phi=None, kernels=None, certificate=None, classification=None):
        self.kind = kind
        self.source = source
        self.phi = phi
        self.kernels = kernels
        self.certificate = certificate or {}
        self.classification = classification

    @property
    def exists(self):
        return self.kind == "uce"

    def to_dict(self):
        out = {"kind": self.kind}
        if self.exists:
            out["source_dims"] = list(self.source.dims)
            out["kernel_dims"] = [k.dim for k in self.kernels]
            out["classification"] = self.classification.to_dict()
        else:
            out["certificate"] = dict(self.certificate)
        return out


def perfectness_certificate(bx):
    "Codimension of each perfectness condition that fails."
    comm = braided_commutator(bx)
    out = {}
    if not comm.sub_m.is_full():
        out["M=B_N(M)"] = comm.sub_m.codim
    if not comm.sub_n.is_full():
        out["N=[N,N]"] = comm.sub_n.codim
    return out


def universal_central_extension(bx, verify=True):
    """
    The universal central extension of bx when it is perfect, or a
    certificate of non-perfectness.
    """
    certificate = perfectness_certificate(bx)
    if certificate:
        return UCEResult("not_perfect", certificate=certificate)
    phi = build_phi(bx, verify=verify)
    cls = classify_braided_extension(phi)
    if verify:
        _require(cls.extension, "Phi is an extension of a perfect braided crossed module")
        _require(cls.central, "Phi is central")
    return UCEResult(
        "uce", source=phi.source, phi=phi, kernels=phi.kernel(), classification=cls
    )


def h2_like_invariants(result):
    "(dim ker Phi1, dim ker Phi2) of a UCE result."
    if not result.exists:
        raise NotPerfectError("no universal central extension to measure")
    k1, k2 = result.kernels
    return (k1.dim, k2.dim)


def _section(f):
    "Canonical preimages of the standard basis under a surjective LieHom."
    S = solve_columns(f.matrix, identity(f.target.dim))
    if S is None:
        raise ConstructionError(f"{f!r} is surjective", "surjective")
    return S


def _perturbed(S, kernel):
    "S with the first kernel vector added to every column."
    if kernel.is_zero():
        return None
    out = S.copy()
    for j in range(S.shape[1]):
        out[:, j] = out[:, j] + kernel.basis[0]
    return out


def _tensor_square_mediator(square, X, S):
    tp = square.presentation
    h1 = bilinear_map(tp, lambda a, b: X.braid(matmul(S, a), matmul(S, b)), X.M).hom
    h2 = bilinear_map(tp, lambda a, b: bracket(X.N, matmul(S, a), matmul(S, b)), X.N).hom
    return BraidedMorphism(square, X, h1, h2)


def mediating_morphism(f, uce, verify=True):
    """
    The morphism h from the tensor square onto the source of a central extension
    f: X -> bx with f o h = Phi.

    h1(e_j (x) e_j') = ((s e_j, s e_j')) and h2(e_j (x) e_j') = [s e_j, s e_j']
    with s the canonical preimage section of f2.

    Args:
        f (:class:`BraidedMorphism`): central extension onto bx
        uce (:class:`UCEResult`): the universal central extension of bx

    Returns:
        :class:`BraidedMorphism`
    """
    if not uce.exists:
        raise NotPerfectError("mediating morphism needs a perfect base")
    cls = classify_braided_extension(f)
    _require(cls.extension and cls.central, "f is a central extension")
    X = f.source
    S = _section(f.f2)
    h = _tensor_square_mediator(uce.source, X, S)
    if verify:
        _require(braided_morphism_check(h), "h is a braided morphism")
        _require(f.compose(h) == uce.phi, "f o h = Phi")
        S2 = _perturbed(S, f.f2.kernel())
        if S2 is not None:
            _require(_tensor_square_mediator(uce.source, X, S2) == h, "h is independent of the section")
    return h


class CompatibleUCEResult:
    """
    Outcome of :func:`compatible_uce`.

    Attributes:
        source (:class:`BraidedXMod`): (N (x) M -> N (x) N)
        c (:class:`BraidedMorphism`): (c1, c2) onto the base
        kernels (tuple): (ker c1, ker c2)
        tensors (tuple): presentations of N (x) M and N (x) N
        classification (:class:`ExtensionClass`)
    """

    def __init__(self, source, c, kernels, tensors, classification):
        self.source = source
        self.c = c
        self.kernels = kernels
        self.tensors = tensors
        self.classification = classification

    def to_dict(self):
        return {
            "source_dims": list(self.source.dims),
            "kernel_dims": [k.dim for k in self.kernels],
            "classification": self.classification.to_dict(),
        }


def star_action(bx):
    "M acting on N by m * n = [dm, n]."
    M, N = bx.M, bx.N
    a = np.empty((M.dim, N.dim, N.dim), dtype=object)
    a.fill(Fraction(0))
    for i in range(M.dim):
        for j in range(N.dim):
            a[i, j] = bracket(N, bx.boundary.matrix[:, i], unit(N.dim, j))
    return Action(M, N, a)


def compatible_uce(bx, verify=True):
    """
    The universal compatible central extension (N (x) M -> N (x) N) of bx.

    Raises:
        NotPerfectError : if bx is not perfect as a crossed module
    """
    if not is_perfect_xmod(bx.xmod):
        raise NotPerfectError(f"{bx.name} is not perfect as a crossed module")
    M, N = bx.M, bx.N
    tp_nm = build_nonabelian_tensor(N, M, bx.action, star_action(bx), name=f"{N.name}(x){M.name}")
    adj = adjoint_action(N)
    tp_nn = build_nonabelian_tensor(N, N, adj, adj, name=f"{N.name}(x){N.name}")
    boundary = induced_hom(tp_nm, tp_nn, LieHom.identity(N), bx.boundary)
    c2 = bilinear_map(tp_nn, N.bracket, N).hom
    phi1 = bilinear_map(tp_nn, bx.braid, M, lie=False).hom
    A, B = tp_nm.quotient, tp_nn.quotient

    a = np.empty((B.dim, A.dim, A.dim), dtype=object)
    a.fill(Fraction(0))
    for p in range(B.dim):
        nu = c2.matrix[:, p]
        D = induced_derivation(tp_nm, N.ad(nu), bx.action.matrix_of(nu))
        for q in range(A.dim):
            a[p, q] = D[:, q]
    b = np.empty((B.dim, B.dim, A.dim), dtype=object)
    b.fill(Fraction(0))
    for p in range(B.dim):
        for pp in range(B.dim):
            b[p, pp] = pure_tensor(tp_nm, c2.matrix[:, p], phi1.matrix[:, pp])

    x = CrossedModule(A, B, boundary, Action(B, A, a), name=f"({A.name}->{B.name})")
    source = BraidedXMod(x, Braiding(x, b))
    c1 = bilinear_map(tp_nm, bx.action.act, M).hom
    c = BraidedMorphism(source, bx, c1, c2)
    cls = classify_braided_extension(c)
    if verify:
        _require(verify_braiding(source), "compatible extension is braided")
        _require(braided_morphism_check(c), "c is a braided morphism")
        _require(cls.extension and cls.compatible_central, "c is a compatible central extension")
    logger.debug("compatible extension of %s has dims %s", bx.name, source.dims)
    return CompatibleUCEResult(source, c, c.kernel(), (tp_nm, tp_nn), cls)


def _compatible_mediator(result, X, S1, S2):
    tp_nm, tp_nn = result.tensors
    h1 = bilinear_map(tp_nm, lambda n, m: X.action.act(matmul(S2, n), matmul(S1, m)), X.M).hom
    h2 = bilinear_map(tp_nn, lambda a, b: bracket(X.N, matmul(S2, a), matmul(S2, b)), X.N).hom
    return BraidedMorphism(result.source, X, h1, h2)


def compatible_mediating_morphism(f, result, verify=True):
    """
    The morphism h out of the compatible extension with f o h = c:
    h1(n (x) m) = s2(n) . s1(m) and h2(n (x) n') = [s2 n, s2 n'].

    Args:
        f (:class:`BraidedMorphism`): compatible central extension onto the base
        result (:class:`CompatibleUCEResult`)
    """
    cls = classify_braided_extension(f)
    _require(cls.extension and cls.compatible_central, "f is a compatible central extension")
    X = f.source
    S1, S2 = _section(f.f1), _section(f.f2)
    h = _compatible_mediator(result, X, S1, S2)
    if verify:
        _require(braided_morphism_check(h), "h is a braided morphism")
        _require(f.compose(h) == result.c, "f o h = c")
        P1, P2 = _perturbed(S1, f.f1.kernel()), _perturbed(S2, f.f2.kernel())
        if P1 is not None or P2 is not None:
            again = _compatible_mediator(
                result, X, S1 if P1 is None else P1, S2 if P2 is None else P2
            )
            _require(again == h, "h is independent of the sections")
    return h


class Comparison:
    """
    The isomorphism between the two universal extensions.

    Attributes:
        h (:class:`BraidedMorphism`): tensor square -> compatible extension
        h_prime (:class:`BraidedMorphism`): compatible extension -> tensor square
        uce (:class:`UCEResult`)
        compatible (:class:`CompatibleUCEResult`)
        checks (dict): name -> bool
    """

    def __init__(self, h, h_prime, uce, compatible, checks):
        self.h = h
        self.h_prime = h_prime
        self.uce = uce
        self.compatible = compatible
        self.checks = checks

    def ok(self):
        return all(self.checks.values())


def compare_uce(bx, verify=True):
    """
    Build both universal extensions of a perfect bx and the mutually inverse
    morphisms between them.

    Raises:
        NotPerfectError : if bx is not perfect
        ConstructionError : if a comparison identity fails
    """
    if not is_perfect_braided(bx):
        raise NotPerfectError(f"{bx.name} is not perfect")
    _require(is_perfect_xmod(bx.xmod), "perfect braided implies perfect as a crossed module")
    u = universal_central_extension(bx, verify=verify)
    cu = compatible_uce(bx, verify=verify)
    h = mediating_morphism(cu.c, u, verify=verify)
    hp = compatible_mediating_morphism(u.phi, cu, verify=verify)
    sq, cs = u.source, cu.source
    checks = {
        "h_prime_after_h": hp.compose(h) == BraidedMorphism.identity(sq),
        "h_after_h_prime": h.compose(hp) == BraidedMorphism.identity(cs),
        "phi_is_c_after_h": cu.c.compose(h) == u.phi,
        "c_is_phi_after_h_prime": u.phi.compose(hp) == cu.c,
    }
    for name, ok in checks.items():
        _require(ok, f"comparison: {name}")
    return Comparison(h, hp, u, cu, checks)


class LemmaReport:
    """
    Equalities that hold when N = [N, N].

    Attributes:
        skipped (bool): N is not perfect
        checks (dict): name -> bool
        witnesses (dict): name -> vector in one side but not the other
    """

    def __init__(self, skipped, checks=None, witnesses=None):
        self.skipped = skipped
        self.checks = checks or {}
        self.witnesses = witnesses or {}

    def ok(self):
        return not self.skipped and all(self.checks.values())

    def to_dict(self):
        if self.skipped:
            return {"skipped": True}
        return {"skipped": False, "checks": dict(self.checks)}


def _difference_witness(A, B):
    for v in A.basis:
        if not B.contains(v):
            return v
    for v in B.basis:
        if not A.contains(v):
            return v
    return None


def check_perfect_base_equalities(bx):
    """
    When N = [N, N]: B_N(M) = D_N(M) and Z_B(N) = Z(N) & st_N(M).
    """
    if not derived_subalgebra(bx.N).is_full():
        return LemmaReport(True)
    pairs = {
        "braided_commutator_is_action_commutator": (
            braided_commutator(bx).sub_m,
            xmod_commutator(bx.xmod).sub_m,
        ),
        "braided_center_is_xmod_center": (
            braided_center_subspace(bx),
            center(bx.N) & stabilizer(bx.xmod),
        ),
    }
    checks, witnesses = {}, {}
    for name, (A, B) in pairs.items():
        checks[name] = A == B
        if not checks[name]:
            witnesses[name] = _difference_witness(A, B)
            logger.warning("%s: %s fails", bx.name, name)
    return LemmaReport(False, checks, witnesses)


def uniqueness_probe(f, g, h):
    """
    Compare two morphisms g, h with f o g = f o h.

    Returns:
        :class:`Verdict` : pass iff g = h componentwise; witness is
        (component, column) of the first difference
    """
    if f.compose(g) != f.compose(h):
        return Verdict.failed("composites", detail="f o g != f o h")
    for label, a, b in (("f1", g.f1.matrix, h.f1.matrix), ("f2", g.f2.matrix, h.f2.matrix)):
        for col in range(a.shape[1]):
            if not mat_equal(a[:, col], b[:, col]):
                perfect = is_perfect_braided(g.source)
                if perfect:
                    logger.warning("distinct mediators out of perfect %s", g.source.name)
                return Verdict.failed(
                    "uniqueness", (label, col), f"source perfect: {perfect}"
                )
    return Verdict.passed()


def corollary_dims(M, verify=True):
    """
    dim M (x) (M (x) M) and dim M (x) M for the tensor square crossed module of M.
    """
    bx = tensor_square_xmod(M, verify=verify)
    cu = compatible_uce(bx, verify=verify)
    tp_nm, tp_nn = cu.tensors
    return tp_nm.dim, tp_nn.dim


def kernel_is_zero(phi):
    k1, k2 = phi.kernel()
    return k1.is_zero() and k2.is_zero()
