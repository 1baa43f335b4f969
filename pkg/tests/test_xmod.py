import pytest
import xmodlie
from xmodlie import (
    Action,
    CrossedModule,
    LieHom,
    QuotientError,
    Subspace,
    XModMorphism,
)
from .strategies import corpus


def alg(name):
    return corpus().get("algebras", name)


def xm(name):
    "Underlying crossed module of a corpus object."
    obj = corpus().lookup(name)[1]
    return obj.xmod if isinstance(obj, xmodlie.BraidedXMod) else obj


@pytest.mark.xmod
@pytest.mark.parametrize("name", ["sl2_idx", "h3_idx", "K3_idx", "sl2_sqx", "T2x", "T3x"])
def test_corpus_xmods_verify(name):
    assert xmodlie.verify_xmod(xm(name))


@pytest.mark.xmod
def test_adjoint_action_verifies():
    for name in ("sl2", "h3", "K2"):
        assert xmodlie.verify_action(xmodlie.adjoint_action(alg(name)))


@pytest.mark.xmod
def test_action_derivation_violation():
    K1, h3 = alg("K1"), alg("h3")
    scale = Action(K1, h3, [xmodlie.identity(3)])
    v = xmodlie.verify_action(scale)
    assert not v and v.axiom == "action-derivation"


@pytest.mark.xmod
def test_action_bracket_violation():
    h3 = alg("h3")
    K1 = alg("K1")
    a = xmodlie.TensorData.zeros((3, 1, 1)).to_numpy()
    a[0, 0, 0] = 1
    v = xmodlie.verify_action(Action(h3, K1, a))
    assert v
    a[2, 0, 0] = 1
    v = xmodlie.verify_action(Action(h3, K1, a))
    assert not v and v.axiom == "action-bracket" and v.witness == (0, 1, 0)


@pytest.mark.xmod
def test_peiffer_violation():
    h3 = alg("h3")
    x = CrossedModule(h3, h3, LieHom.zero(h3, h3), xmodlie.adjoint_action(h3))
    v = xmodlie.verify_xmod(x)
    assert not v and v.axiom == "peiffer"


@pytest.mark.xmod
def test_equivariance_violation():
    K1, sl2 = alg("K1"), alg("sl2")
    d = LieHom(K1, sl2, [[1], [0], [0]])
    x = CrossedModule(K1, sl2, d, Action.zero(sl2, K1))
    v = xmodlie.verify_xmod(x)
    assert not v and v.axiom == "equivariance"


@pytest.mark.xmod
def test_dimension_mismatch():
    with pytest.raises(xmodlie.DimensionError):
        CrossedModule(alg("K2"), alg("K3"), LieHom.zero(alg("K2"), alg("K2")), Action.zero(alg("K3"), alg("K2")))


@pytest.mark.xmod
def test_k3_subalgebras():
    x = xm("T3x")
    assert xmodlie.fixed_points(x).dim == 9
    assert xmodlie.stabilizer(x).dim == 3
    assert xmodlie.center(x.N).dim == 3
    zc = xmodlie.xmod_center(x)
    assert zc.dims == (9, 3)
    assert zc.flags()["crossed_submodule"]
    comm = xmodlie.xmod_commutator(x)
    assert comm.dims == (0, 0)
    assert not xmodlie.is_perfect_xmod(x)


@pytest.mark.xmod
def test_identity_xmod_center_and_commutator():
    x = xm("sl2_idx")
    assert xmodlie.xmod_center(x).dims == (0, 0)
    assert xmodlie.is_perfect_xmod(x)
    h = xm("h3_idx")
    zc = xmodlie.xmod_center(h)
    assert zc.dims == (1, 1)
    assert zc.boundary_compatible and zc.normal
    assert xmodlie.xmod_commutator(h).dims == (1, 1)


@pytest.mark.xmod
def test_morphism_identity_and_compose():
    x = xm("sl2_idx")
    one = XModMorphism.identity(x)
    assert xmodlie.xmod_morphism_check(one)
    assert one.compose(one) == one
    assert xmodlie.kernels_zero(one)
    assert not xmodlie.is_zero_morphism(one)
    assert xmodlie.is_zero_morphism(XModMorphism.zero(x, x))
    cls = xmodlie.classify_xmod_extension(one)
    assert cls.extension and cls.central


@pytest.mark.xmod
def test_morphism_axiom_violations():
    x = xm("sl2_idx")
    sl2 = x.M
    f = XModMorphism(x, x, LieHom.identity(sl2), LieHom.zero(sl2, sl2))
    v = xmodlie.xmod_morphism_check(f)
    assert not v and v.axiom == "XLieH1"
    g = XModMorphism(x, x, LieHom.zero(sl2, sl2), LieHom.identity(sl2))
    v = xmodlie.xmod_morphism_check(g)
    assert not v and v.axiom == "XLieH2"


@pytest.mark.xmod
def test_pi_pair_is_central_without_braiding():
    phi = corpus().get("morphisms", "pi_pair").underlying
    assert xmodlie.xmod_morphism_check(phi)
    cls = xmodlie.classify_xmod_extension(phi)
    assert cls.extension and cls.central
    assert cls.dims()["ker_f1"] == 5 and cls.dims()["ker_f2"] == 1


@pytest.mark.xmod
def test_product_xmod():
    P, px, py, ix, iy = xmodlie.product_xmod(xm("T2x"), xm("T3x"))
    assert P.dims == (13, 5)
    assert xmodlie.verify_xmod(P)
    for phi in (px, py, ix, iy):
        assert xmodlie.xmod_morphism_check(phi)
    assert px.compose(ix) == XModMorphism.identity(xm("T2x"))
    assert xmodlie.is_zero_morphism(py.compose(ix))


@pytest.mark.xmod
def test_quotient_xmod():
    h = xm("h3_idx")
    z = Subspace(3, [[0, 0, 1]])
    Q, proj = xmodlie.quotient_xmod(h, z, z)
    assert Q.dims == (2, 2)
    assert xmodlie.verify_xmod(Q)
    assert xmodlie.xmod_morphism_check(proj)
    assert proj.is_surjective()
    assert Q.M.is_abelian()


@pytest.mark.xmod
def test_quotient_rejections():
    h = xm("h3_idx")
    x_line = Subspace(3, [[1, 0, 0]])
    z = Subspace(3, [[0, 0, 1]])
    with pytest.raises(QuotientError) as err:
        xmodlie.quotient_xmod(h, x_line, x_line)
    assert err.value.condition == "I1 ideal of M"
    with pytest.raises(QuotientError) as err:
        xmodlie.quotient_xmod(h, z, Subspace.zero(3))
    assert err.value.condition == "d(I1) in I2"


@pytest.mark.xmod
def test_crossed_submodule_flags():
    x = xm("sl2_idx")
    e_line = Subspace(3, [[1, 0, 0]])
    h_line = Subspace(3, [[0, 1, 0]])
    sub = xmodlie.CrossedSubmodule(x, e_line, e_line)
    assert sub.subalgebras and sub.boundary_compatible and sub.action_stable
    assert sub.is_crossed_submodule
    assert not sub.ideals and not sub.normal
    skew = xmodlie.CrossedSubmodule(x, h_line, e_line)
    assert not skew.boundary_compatible
    assert not skew.action_stable
    assert not skew.is_crossed_submodule
