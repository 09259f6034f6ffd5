import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from reflectum.comodule import (
    RibbonMissing,
    check_kmatrix,
    induced_action,
    ktilde,
    trivial_comodule_algebra,
    unit_kmatrix,
)
from reflectum.doubles import catalog_group, group_algebra, swap_matrix
from reflectum.linalg import Matrix
from reflectum.modules import ModuleMismatch, regular_module, tensor_module, trivial_module
from reflectum.reflective import reflective_algebra
from reflectum.representations import (
    DoiHopfModule,
    braiding_e,
    braiding_from_coaction,
    check_braided_module,
    check_yd,
    coaction_from_braiding,
    conjugation_yd_module,
    doi_hopf_check,
    omega_functor,
    omega_inverse_functor,
    random_twisted_modules,
    rha_induced_action,
    twist_doi_hopf,
    typeB_operators,
    yd_translate,
    yd_translate_back,
)

from conftest import double, reflective, ribbon

SLOW = settings(max_examples=15, deadline=None, suppress_health_check=list(HealthCheck))


def kg(name):
    H = group_algebra(catalog_group(name))
    return H, H.r_matrix


def regular_pair(name, which="k"):
    _, _, D, R = double(name)
    RA = reflective(name, which)
    return D, R, RA, regular_module(D, "X"), regular_module(RA.base, "M")


# ---------------------------------------------------------------- modules


def test_regular_module_of_group_algebra_permutes():
    H, _ = kg("C2")
    X = regular_module(H)
    assert X.act_basis(1) == Matrix(2, 2, [{1: 1}, {0: 1}])
    assert X.check().ok


def test_tensor_of_trivial_modules_is_trivial(c2):
    D = c2[2]
    T = tensor_module(D, trivial_module(D), trivial_module(D))
    assert T.dim == 1 and T.check().ok
    assert [T.act_basis(i).columns for i in range(D.dim)] == \
        [trivial_module(D).act_basis(i).columns for i in range(D.dim)]


def test_regular_tensor_regular_over_drin_c2(c2):
    D = c2[2]
    assert tensor_module(D, regular_module(D), regular_module(D)).check().ok


def test_tensor_module_mismatch(c2, c3):
    with pytest.raises(ModuleMismatch):
        tensor_module(c2[2], regular_module(c2[2]), regular_module(c3[2]))


# ---------------------------------------------------------------- braidings


def test_unit_k_gives_identity_braiding():
    H, R = kg("S3")
    K = unit_kmatrix(trivial_comodule_algebra(H))
    X, M = regular_module(H), regular_module(K.comod.algebra)
    assert braiding_e(K, X, M).is_identity()
    assert check_braided_module(K, R, X, X, M).ok


@pytest.mark.parametrize("name,which", [("C2", "k"), ("C2", "H"), ("C3", "k")])
def test_kref_braided_module(name, which):
    D, R, RA, X, M = regular_pair(name, which)
    rep = check_braided_module(RA.k_ref, R, X, X, M)
    assert rep.ok
    assert {c.tag for c in rep.checks} >= {"brmod1", "brmod2", "brmod-morphism"}


def test_braiding_is_dual_basis_form(c2):
    D, R, RA, X, M = regular_pair("C2")
    n = D.dim
    expect = Matrix.zeros(X.dim * M.dim, X.dim * M.dim)
    for d in range(n):
        expect = expect + X.act_basis(d).kron(M.act(RA.iota_Hstar.column(d)))
    assert braiding_e(RA.k_ref, X, M) == expect


@SLOW
@given(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2).filter(bool))
def test_kmatrix_iff_braided_module(i, j, delta):
    D, R, RA, X, M = regular_pair("C2")
    K = RA.k_ref.perturbed((i, j), delta)
    assert check_kmatrix(K, R).ok == check_braided_module(K, R, X, X, M).ok


def test_perturbed_k_fails_both_views(c2):
    D, R, RA, X, M = regular_pair("C2")
    K = RA.k_ref.perturbed((0, 1))
    assert not check_kmatrix(K, R).ok
    assert not check_braided_module(K, R, X, X, M).ok


def test_braiding_mismatch(c2, c3):
    D, R, RA, X, M = regular_pair("C2")
    with pytest.raises(ModuleMismatch):
        braiding_e(RA.k_ref, regular_module(c3[2]), M)


# ---------------------------------------------------------------- type B


def test_typeb_trivial_is_permutations():
    H, R = kg("C3")
    K = unit_kmatrix(trivial_comodule_algebra(H))
    X, M = regular_module(H), regular_module(K.comod.algebra)
    T = typeB_operators(R, K, X, M, n=3)
    assert T.report.ok and T.tau.is_identity()
    assert T.sigmas[0] == swap_matrix(3, 3).kron(Matrix.identity(3))


@pytest.mark.parametrize("n", [2, 3])
def test_typeb_drin_c2(n):
    D, R, RA, X, M = regular_pair("C2")
    v, _ = ribbon("C2")
    T = typeB_operators(R, ktilde(RA.k_ref, v), X, M, n=n)
    assert T.report.ok and len(T.sigmas) == n - 1
    assert set(T.generators()) == {f"sigma_{i + 1}" for i in range(n - 1)} | {"tau"}


def test_typeb_drin_s3_conjugation_module(s3):
    G, H0, D, R = s3
    X = yd_translate_back(conjugation_yd_module(G, H0), D)
    assert X.dim == 6 and X.check().ok
    RA = reflective("S3")
    v, _ = ribbon("S3")
    T = typeB_operators(R, ktilde(RA.k_ref, v), X, regular_module(RA.base), n=2)
    gating = [c for c in T.report.checks if not c.informational]
    assert all(c.status == "PASS" for c in gating)
    assert T.report.ok


def test_typeb_fault_injected_breaks_relation(s3):
    G, H0, D, R = s3
    X = yd_translate_back(conjugation_yd_module(G, H0), D)
    RA = reflective("S3")
    v, _ = ribbon("S3")
    bad = ktilde(RA.k_ref, v).perturbed((0, 1))
    T = typeB_operators(R, bad, X, regular_module(RA.base), n=2)
    assert T.report.status_of("σ1τσ1τ = τσ1τσ1") == "FAIL"


def test_commutative_double_tolerates_perturbation():
    # everything commutes for Drin(C2), so the cylinder relation survives
    D, R, RA, X, M = regular_pair("C2")
    v, _ = ribbon("C2")
    T = typeB_operators(R, ktilde(RA.k_ref, v).perturbed((1, 2)), X, M, n=2)
    assert T.report.ok


def test_typeb_needs_ribbon(c2):
    D, R, RA, X, M = regular_pair("C2")
    with pytest.raises(RibbonMissing):
        typeB_operators(R, None, X, M)


# ---------------------------------------------------------------- Doi-Hopf and Omega


def test_doi_hopf_trivial():
    H, R = kg("trivial")
    RA = reflective_algebra(H, R, trivial_comodule_algebra(H))
    M = regular_module(RA.base)
    Dh = omega_inverse_functor(M, RA)
    assert doi_hopf_check(Dh).ok
    assert omega_functor(Dh, RA).action == M.action


@pytest.mark.parametrize("name,which", [("C2", "k"), ("C2", "H"), ("C3", "k")])
def test_pullback_of_regular_is_doi_hopf(name, which):
    D, R, RA, X, M = regular_pair(name, which)
    Dh = omega_inverse_functor(M, RA)
    assert doi_hopf_check(Dh).ok
    # φ(m) = Σ_d h_d⊗(ξ_d⋆m)
    for d in range(D.dim):
        op = M.act(RA.iota_Hstar.column(d))
        for m in range(M.dim):
            got = {mp: c for (e, mp), c in Dh.coaction[m].items() if e == d}
            assert got == op.column(m)


def test_corrupted_coaction_gives_witness(c2):
    D, R, RA, X, M = regular_pair("C2")
    Dh = omega_inverse_functor(M, RA)
    coaction = [dict(c) for c in Dh.coaction]
    coaction[1][(2, 3)] = coaction[1].get((2, 3), 0) + 1
    rep = doi_hopf_check(DoiHopfModule(Dh.B_module, coaction, Dh.B, Dh.C))
    assert not rep.ok
    bad = [c for c in rep.checks if c.status == "FAIL"]
    assert all(c.witness and c.witness["discrepancy"] for c in bad)


@pytest.mark.parametrize("name,which", [("C2", "k"), ("C2", "H"), ("C3", "k")])
def test_round_trips_on_random_modules(name, which):
    D, R, RA, X, M = regular_pair(name, which)
    for Mt in random_twisted_modules(M, 25, seed=7):
        Dh = omega_inverse_functor(Mt, RA)
        assert omega_functor(Dh, RA).action == Mt.action
        back = omega_inverse_functor(omega_functor(Dh, RA), RA)
        assert back.coaction == Dh.coaction and back.B_module.action == Dh.B_module.action
        e = braiding_from_coaction(Dh, X)
        assert coaction_from_braiding(D, Mt.dim, e) == Dh.coaction


def test_twisted_doi_hopf_stays_valid(c2):
    import random

    from reflectum.representations import random_invertible
    D, R, RA, X, M = regular_pair("C2")
    Dh = omega_inverse_functor(M, RA)
    P = random_invertible(M.dim, random.Random(3))
    assert doi_hopf_check(twist_doi_hopf(Dh, P)).ok


def test_trivial_coaction_gives_identity_braiding():
    H, R = kg("C3")
    RA = reflective_algebra(H, R, trivial_comodule_algebra(H))
    A = trivial_comodule_algebra(H)
    unit = next(iter(H.unit))
    B_mod = regular_module(A.algebra)
    Dh = DoiHopfModule(B_mod, [{(unit, 0): 1}], A, RA.transmuted)
    assert braiding_from_coaction(Dh, regular_module(H)).is_identity()


@pytest.mark.parametrize("name,which", [("C2", "k"), ("C3", "k"), ("C2", "H")])
def test_recovered_braiding_is_kref_braiding(name, which):
    D, R, RA, X, M = regular_pair(name, which)
    e = braiding_from_coaction(omega_inverse_functor(M, RA), X)
    assert e == braiding_e(RA.k_ref, X, M)


def test_coaction_from_braiding_shape(c2):
    from reflectum.linalg import DimensionMismatch
    with pytest.raises(DimensionMismatch):
        coaction_from_braiding(c2[2], 3, Matrix.identity(5))


# ---------------------------------------------------------------- R_H(A) on Y⊗M


@pytest.mark.parametrize("name,which", [("C2", "k"), ("C2", "H"), ("C3", "k")])
def test_rha_action_matches_delta_ref(name, which):
    D, R, RA, X, M = regular_pair(name, which)
    YM = rha_induced_action(D, R, RA, X, M)
    assert YM.check().ok
    assert YM.action == induced_action(RA.comod, X, M).action


def test_rha_action_cocommutative():
    H, R = kg("S3")
    RA = reflective_algebra(H, R, trivial_comodule_algebra(H))
    Y, M = regular_module(H), regular_module(RA.base)
    YM = rha_induced_action(H, R, RA, Y, M)
    for d in range(H.dim):
        assert YM.act_basis(d) == Matrix.identity(Y.dim).kron(M.act_basis(d))


def test_kref_braiding_commutes_with_action():
    D, R, RA, X, M = regular_pair("C2", "H")
    e = braiding_e(RA.k_ref, X, M)
    YM = rha_induced_action(D, R, RA, X, M)
    for i in range(RA.dim):
        assert e @ YM.act_basis(i) == YM.act_basis(i) @ e


# ---------------------------------------------------------------- Yetter-Drinfeld


def test_trivial_module_trivial_coaction(c2):
    G, H0, D, R = double("C2")
    Y = yd_translate(H0, D, trivial_module(D))
    unit = next(iter(H0.unit))
    assert Y.coaction == [{(unit, 0): 1}]


@pytest.mark.parametrize("name", ["C2", "C3"])
def test_yd_round_trip(name):
    G, H0, D, R = double(name)
    M = regular_module(D)
    Y = yd_translate(H0, D, M)
    assert check_yd(Y).ok
    assert yd_translate_back(Y, D).action == M.action
    for Mt in random_twisted_modules(M, 5, seed=1):
        assert yd_translate_back(yd_translate(H0, D, Mt), D).action == Mt.action


def test_conjugation_module_is_yd(s3):
    G, H0, D, R = s3
    Y = conjugation_yd_module(G, H0)
    assert check_yd(Y).ok
    assert yd_translate(H0, D, yd_translate_back(Y, D)).coaction == Y.coaction
