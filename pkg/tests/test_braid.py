import pytest
import xmodlie
from xmodlie import (
    BraidedMorphism,
    BraidingError,
    DegenerateWitnessError,
    Subspace,
)
from .strategies import CORPUS_BRAIDINGS, corpus


def bx(name):
    return corpus().braided(name)


@pytest.mark.braid
@pytest.mark.parametrize("name", CORPUS_BRAIDINGS)
def test_corpus_braidings_verify(name):
    assert xmodlie.verify_braiding(bx(name))
    assert xmodlie.naive_blie56_failures(bx(name)) == []


@pytest.mark.braid
def test_negated_bracket_fails_blie1():
    sl2 = bx("sl2_id")
    neg = sl2.with_braiding(sl2.braiding.negated().b)
    v = xmodlie.verify_braiding(neg)
    assert not v and v.axiom == "BLie1"


@pytest.mark.braid
def test_zero_braiding_on_nonabelian_fails():
    h3 = bx("h3_id")
    v = xmodlie.verify_braiding(h3.with_braiding(xmodlie.Braiding.zero(h3.xmod).b))
    assert not v and v.axiom == "BLie1" and v.witness == (0, 1)


@pytest.mark.braid
def test_underlying_failure_reported_first():
    h3 = xmodlie.LieAlgebra.from_brackets(3, [(0, 1, 2, 1)], name="h3")
    x = xmodlie.CrossedModule(h3, h3, xmodlie.LieHom.zero(h3, h3), xmodlie.adjoint_action(h3))
    v = xmodlie.verify_braiding(xmodlie.BraidedXMod(x, xmodlie.Braiding.zero(x)))
    assert not v and v.axiom == "peiffer"


@pytest.mark.braid
def test_zero_braided():
    z = xmodlie.zero_braided()
    assert z.dims == (0, 0)
    assert xmodlie.verify_braiding(z)
    assert xmodlie.is_perfect_braided(z)


@pytest.mark.braid
def test_braided_center_k3():
    T3 = bx("T3")
    ZB = xmodlie.braided_center_subspace(T3)
    assert ZB.dim == 0
    c = xmodlie.braided_center(T3)
    assert c.dims == (9, 0)
    assert c.all_checks()


@pytest.mark.braid
@pytest.mark.parametrize("name", CORPUS_BRAIDINGS)
def test_center_and_commutator_containments(name):
    b = bx(name)
    c = xmodlie.braided_center(b)
    assert c.checks["fixed_points_by_boundary"]
    assert c.checks["inside_xmod_center"]
    assert c.all_checks()
    comm = xmodlie.braided_commutator(b)
    assert all(comm.checks.values())
    assert xmodlie.verify_braided_xmod(b)


@pytest.mark.braid
@pytest.mark.parametrize("name", ["sl2_id", "sl2_sq"])
def test_perfect_base_equalities(name):
    report = xmodlie.check_perfect_base_equalities(bx(name))
    assert not report.skipped
    assert report.ok()
    assert report.witnesses == {}


@pytest.mark.braid
def test_perfect_base_equalities_skipped():
    report = xmodlie.check_perfect_base_equalities(bx("h3_id"))
    assert report.skipped and not report.ok()
    assert report.to_dict() == {"skipped": True}


@pytest.mark.braid
def test_h3_commutator():
    comm = xmodlie.braided_commutator(bx("h3_id"))
    assert comm.dims == (1, 1)
    assert not xmodlie.is_perfect_braided(bx("h3_id"))
    assert xmodlie.is_perfect_braided(bx("sl2_id"))
    assert xmodlie.is_perfect_braided(bx("sl2_sq"))


@pytest.mark.braid
def test_classify_pi_pair():
    phi = corpus().get("morphisms", "pi_pair")
    assert xmodlie.braided_morphism_check(phi)
    cls = xmodlie.classify_braided_extension(phi)
    assert cls.extension
    assert cls.compatible_central
    assert not cls.central
    dims = cls.dims()
    assert dims["braided_center"] == 0
    assert dims["fixed_points"] == 9
    assert dims["st_cap_center"] == 3
    assert dims["ker_f1"] == 5
    assert dims["ker_f2"] == 1
    assert cls.to_dict()["central"] is False


@pytest.mark.braid
def test_bxlieh3_violation():
    phi = corpus().get("morphisms", "pi_pair")
    neg = BraidedMorphism(phi.source, bx("T2_neg"), phi.f1, phi.f2)
    assert xmodlie.xmod_morphism_check(neg.underlying)
    v = xmodlie.braided_morphism_check(neg)
    assert not v and v.axiom == "BXLieH3"


@pytest.mark.braid
def test_morphism_compose_identity():
    phi = corpus().get("morphisms", "pi_pair")
    one = BraidedMorphism.identity(phi.source)
    assert phi.compose(one) == phi
    assert BraidedMorphism.identity(phi.target).compose(phi) == phi
    zero = BraidedMorphism.zero(phi.source, phi.target)
    assert xmodlie.braided_morphism_check(zero)
    assert not xmodlie.classify_braided_extension(zero).extension


@pytest.mark.braid
def test_product_braided():
    P, px, py, ix, iy = xmodlie.product_braided(bx("T2"), bx("T3"))
    assert P.dims == (13, 5)
    assert xmodlie.verify_braiding(P)
    for phi in (px, py, ix, iy):
        assert xmodlie.braided_morphism_check(phi)
    pair = xmodlie.paired(P, BraidedMorphism.identity(bx("T2")), BraidedMorphism.zero(bx("T2"), bx("T3")))
    assert xmodlie.braided_morphism_check(pair)
    assert px.compose(pair) == BraidedMorphism.identity(bx("T2"))


@pytest.mark.braid
def test_quotient_braided():
    h3 = bx("h3_id")
    z = Subspace(3, [[0, 0, 1]])
    Q, proj = xmodlie.quotient_braided(h3, z, z)
    assert Q.dims == (2, 2)
    assert xmodlie.verify_braiding(Q)
    assert xmodlie.braided_morphism_check(proj)
    same, ident = xmodlie.braided_quotient_by_zero(h3)
    assert same.dims == (3, 3)
    assert xmodlie.kernels_zero(ident.underlying)


@pytest.mark.braid
def test_quotient_braided_needs_descending_braiding():
    T3 = bx("T3")
    with pytest.raises(xmodlie.QuotientError) as err:
        xmodlie.quotient_braided(T3, Subspace.zero(9), Subspace(3, [[1, 0, 0]]))
    assert err.value.condition == "{I2,N} in I1"


@pytest.mark.braid
def test_cokernels():
    Q, ic = xmodlie.cokernel_of_commutator(bx("h3_id"))
    assert Q.dims == (2, 2)
    assert ic.is_surjective()
    Q, _ = xmodlie.cokernel_of_xmod_commutator(bx("T3"))
    assert Q.dims == (9, 3)


@pytest.mark.braid
def test_non_perfect_witness_h3():
    psi = BraidedMorphism.identity(bx("h3_id"))
    w = xmodlie.non_perfect_witness(psi)
    assert w.verdict()
    assert w.difference is not None
    assert w.h != w.g
    assert w.extension.compose(w.h) == w.extension.compose(w.g) == psi
    v = xmodlie.uniqueness_probe(w.extension, w.h, w.g)
    assert not v and v.axiom == "uniqueness"


@pytest.mark.braid
def test_non_perfect_witness_abelian():
    psi = BraidedMorphism.identity(bx("K2_id"))
    w = xmodlie.non_perfect_witness(psi)
    assert w.verdict()
    bottom = w.g.f2.matrix[2:, :]
    assert xmodlie.mat_equal(bottom, xmodlie.identity(2))
    assert xmodlie.is_zero(w.h.f2.matrix[2:, :])


@pytest.mark.braid
def test_non_perfect_witness_rejections():
    with pytest.raises(DegenerateWitnessError):
        xmodlie.non_perfect_witness(BraidedMorphism.identity(bx("sl2_id")))
    with pytest.raises(BraidingError):
        xmodlie.non_perfect_witness(corpus().get("morphisms", "pi_pair"))


@pytest.mark.braid
def test_non_perfect_witness_compatible():
    w = xmodlie.non_perfect_witness_compatible(corpus().get("morphisms", "pi_pair"))
    assert w.verdict()
    assert w.checks["pi1_compatible_central"]


@pytest.mark.braid
def test_perfect_descends():
    v = xmodlie.perfect_descends(BraidedMorphism.identity(bx("sl2_id")))
    assert v and v.detail == ""
    v = xmodlie.perfect_descends(corpus().get("morphisms", "pi_pair"))
    assert v and v.detail == "source not perfect"
    v = xmodlie.perfect_descends(BraidedMorphism.identity(bx("sl2_sq")), as_xmod=True)
    assert v
    phi = corpus().get("morphisms", "pi_pair")
    v = xmodlie.perfect_descends(BraidedMorphism.zero(phi.source, phi.target))
    assert not v and v.axiom == "extension"
