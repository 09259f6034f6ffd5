import itertools

import pytest

from reflectum.comodule import check_comodule_algebra, regular_comodule_algebra, trivial_comodule_algebra
from reflectum.doubles import catalog_group, drinfeld_double, group_algebra
from reflectum.hopf import check_algebra
from reflectum.linalg import accumulate
from reflectum.reflective import (
    CrossedProduct,
    check_covariantized,
    check_transmuted,
    cocommutative_drin_coaction,
    comult_as_matrix,
    covariantized_dual,
    crossed_product,
    drin_coaction_ref,
    drin_group_closed_form,
    kappa,
    omega,
    omega_inverse,
    reflective_algebra,
    transmute,
)

from conftest import double, reflective


def kg(name):
    H = group_algebra(catalog_group(name))
    return H, H.r_matrix


# ---------------------------------------------------------------- transmutation


@pytest.mark.parametrize("name", ["C3", "S3"])
def test_transmute_trivial_r_is_adjoint_action(name):
    H, R = kg(name)
    G = catalog_group(name)
    T = transmute(H, R)
    assert T.comult_hat == H.comult
    for l, h in itertools.product(range(G.order), repeat=2):
        assert T.haction[l][h] == {G.mul(l, h, G.inv(l)): 1}


def test_transmuted_counit_is_counit(c3):
    _, _, D, R = c3
    T = transmute(D, R)
    assert T.counit_hat == D.counit
    assert check_transmuted(T).ok


def test_omega_trivial_r_is_identity():
    H, R = kg("S3")
    assert omega(H, R).is_identity()


def test_omega_inverse_drin_c2(c2):
    _, _, D, R = c2
    assert (omega(D, R) @ omega_inverse(D, R)).is_identity()
    assert (omega_inverse(D, R) @ omega(D, R)).is_identity()


@pytest.mark.parametrize("name", ["C2", "C3", "S3"])
def test_comult_hat_is_omega_of_comult(name):
    _, _, D, R = double(name)
    T = reflective(name).transmuted
    assert omega(D, R) @ comult_as_matrix(D.coalgebra) == comult_as_matrix(T.coalgebra)


# ---------------------------------------------------------------- covariantized dual


def test_covariantized_trivial_r_is_convolution():
    H, R = kg("S3")
    C = covariantized_dual(transmute(H, R))
    n = H.dim
    # convolution on the dual of kG: δ_x δ_y = [x = y] δ_x
    for d, e in itertools.product(range(n), repeat=2):
        assert C.algebra.mul_basis(d, e) == ({d: 1} if d == e else {})


@pytest.mark.parametrize("name", ["C2", "C3", "S3"])
def test_covariantized_dual_axioms(name):
    C = reflective(name).cov
    assert check_covariantized(C).ok


def test_closed_form_abelian_product():
    G = catalog_group("C3")
    n = G.order
    cf = drin_group_closed_form(G)
    for x, y, xp, yp in itertools.product(range(n), repeat=4):
        expect = {G.mul(x, xp) * n + y: 1} if y == yp else {}
        assert cf["product"][x * n + y][xp * n + yp] == expect


def test_closed_form_trivial_group():
    cf = drin_group_closed_form(catalog_group("trivial"))
    assert cf["product"] == [[{0: 1}]]
    assert cf["kmatrix"] == {(0, 0): 1}


# ---------------------------------------------------------------- crossed products


def test_crossed_product_over_k_is_opposite(c2):
    RA = reflective("C2")
    C = RA.cov
    n = C.dim
    for d, e in itertools.product(range(n), repeat=2):
        assert RA.base.mul_basis(d, e) == C.algebra.mul_basis(e, d)


def test_crossed_product_trivial_action_is_tensor_product(c2):
    _, _, D, R = c2
    B = regular_comodule_algebra(D)
    C = reflective("C2").cov
    n = C.dim
    CP = CrossedProduct(D, B, C.algebra.mul_basis, C.algebra.unit,
                        lambda l, d: {d: D.counit.get(l, 0)} if D.counit.get(l, 0) else {}, n)
    for i, k in itertools.product(range(CP.dim), repeat=2):
        j, d = divmod(i, n)
        jp, e = divmod(k, n)
        expect = {}
        for p, u in D.mul_basis(j, jp).items():
            for q, v in C.algebra.mul_basis(e, d).items():
                accumulate(expect, p * n + q, u * v)
        assert CP.algebra.mul_basis(i, k) == expect


def test_crossed_product_associative_regular(c2):
    _, _, D, R = c2
    CP = crossed_product(D, regular_comodule_algebra(D), reflective("C2").cov)
    assert CP.report.ok and check_algebra(CP.algebra).ok


# ---------------------------------------------------------------- reflective algebras


@pytest.mark.parametrize("name,which,dim", [("C2", "k", 4), ("C2", "H", 16), ("C3", "k", 9),
                                            ("C3", "H", 81), ("S3", "k", 36)])
def test_reflective_algebra_dimensions_and_checks(name, which, dim):
    RA = reflective(name, which)
    assert RA.dim == dim and RA.report.ok


def test_cocommutative_delta_ref_is_trivial():
    H, R = kg("S3")
    RA = reflective_algebra(H, R, trivial_comodule_algebra(H))
    u = next(iter(H.unit))
    for d in range(H.dim):
        assert RA.delta_ref[d] == {(u, d): 1}


@pytest.mark.parametrize("name", ["C2", "C3"])
def test_iota_carries_kref_k_to_kref_a(name):
    Rk, RH = reflective(name, "k"), reflective(name, "H")
    img = {}
    for (h, p), c in Rk.k_ref.element.coeffs.items():
        for q, v in RH.iota_Hstar.column(p).items():
            accumulate(img, (h, q), c * v)
    assert img == RH.k_ref.element.coeffs


@pytest.mark.parametrize("name", ["C2", "C3", "S3"])
def test_closed_form_oracle(name):
    G = catalog_group(name)
    RA = reflective(name)
    cf = drin_group_closed_form(G)
    assert cf["product"] == RA.base.table()
    assert cf["coaction"] == RA.delta_ref
    assert cf["kmatrix"] == RA.k_ref.element.coeffs


# ---------------------------------------------------------------- kappa


def test_kappa_identity_on_kref_k(c2):
    _, _, D, R = c2
    RA = reflective("C2")
    kap, rep = kappa(D, R, RA.comod, RA.k_ref, RA)
    assert rep.ok and kap.is_identity()


@pytest.mark.parametrize("name", ["C2", "C3"])
def test_kappa_is_the_embedding_into_r_h_of_h(name):
    _, _, D, R = double(name)
    RA = reflective(name, "H")
    kap, rep = kappa(D, R, RA.comod, RA.k_ref, reflective(name))
    assert rep.ok
    assert kap == RA.iota_Hstar


def test_kappa_rejects_foreign_k(c2):
    _, _, D, R = c2
    RA = reflective("C2", "H")
    _, rep = kappa(D, R, RA.comod, RA.k_ref.perturbed((0, 0)), reflective("C2"))
    assert not rep.ok


# ---------------------------------------------------------------- Drin(H)-coaction


@pytest.mark.parametrize("name", ["C2", "C3", "S3"])
def test_drin_coaction_over_group_algebra(name):
    H, R = kg(name)
    RA = reflective_algebra(H, R, trivial_comodule_algebra(H))
    D, _ = drinfeld_double(H)
    CA, rep = drin_coaction_ref(H, R, RA, D=D)
    assert rep.ok
    assert cocommutative_drin_coaction(H, RA) == CA.coaction


def test_drin_coaction_over_drin_c2(c2):
    _, _, D, R = c2
    CA, rep = drin_coaction_ref(D, R, reflective("C2"))
    assert CA.host.dim == 16 and rep.ok
    assert check_comodule_algebra(CA).ok


def test_drin_coaction_over_drin_c2_regular(c2):
    _, _, D, R = c2
    CA, rep = drin_coaction_ref(D, R, reflective("C2", "H"))
    assert rep.ok
