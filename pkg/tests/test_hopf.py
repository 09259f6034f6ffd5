import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflectum.doubles import catalog_group, group_algebra
from reflectum.hopf import (
    Algebra,
    Coalgebra,
    HopfAlgebra,
    NoAntipode,
    NotInvertible,
    antipode_solve,
    check_algebra,
    check_hopf,
    check_semisimple,
    coopposite,
    dual_hopf,
    element_inverse,
    matrix_monoid_bialgebra,
    multileg_inverse,
    opposite,
    truncated_polynomial_algebra,
)
from reflectum.linalg import Matrix

from conftest import reflective


def test_group_algebra_is_hopf():
    H = group_algebra(catalog_group("C2"))
    assert check_hopf(H).ok


def test_wrong_antipode_is_caught_at_g():
    H = group_algebra(catalog_group("C2"))
    bad = HopfAlgebra(H.algebra, H.coalgebra, Matrix(2, 2, [{0: 1}, {0: 1}]), name="bad")
    rep = check_hopf(bad)
    assert not rep.ok
    fails = [c for c in rep.failures if c.tag == "antipode"]
    assert fails and fails[0].witness["index"] == [1]


def test_non_associative_product_is_caught():
    # e1 e1 = e1 but e1 (e1 e1) vs (e1 e1) e1 broken by e1 e2 asymmetry
    table = [[{0: 1}, {1: 1}, {2: 1}],
             [{1: 1}, {2: 1}, {0: 1}],
             [{2: 1}, {0: 1}, {0: 1}]]
    A = Algebra(3, table, {0: 1})
    rep = check_algebra(A)
    assert not rep.ok and rep.failures[0].witness["index"]


def test_antipode_solve_group_inverse():
    G = catalog_group("S3")
    H = group_algebra(G)
    S = antipode_solve(H.algebra, H.coalgebra)
    assert S == Matrix(6, 6, [{G.inv(g): 1} for g in range(6)])


def test_antipode_solve_on_double(c2):
    _, _, D, _ = c2
    S = antipode_solve(D.algebra, D.coalgebra)
    assert S == D.antipode
    assert check_hopf(HopfAlgebra(D.algebra, D.coalgebra, S)).ok


def test_monoid_bialgebra_has_no_antipode():
    alg, coal = matrix_monoid_bialgebra()
    assert alg.dim == 16 and check_algebra(alg).ok
    with pytest.raises(NoAntipode):
        antipode_solve(alg, coal)


def test_dual_of_group_algebra_is_function_algebra():
    G = catalog_group("S3")
    F = dual_hopf(group_algebra(G))
    for x in range(6):
        for y in range(6):
            assert F.mul_basis(x, y) == ({x: 1} if x == y else {})
    assert check_hopf(F).ok


def test_double_dual_is_identity(c2):
    _, _, D, _ = c2
    DD = dual_hopf(dual_hopf(D))
    assert DD.algebra.table() == D.algebra.table()
    assert DD.comult == D.comult and DD.counit == D.counit and DD.antipode == D.antipode


def test_dual_of_drin_c2_is_group_tensor_functions(c2):
    # as an algebra, (Drin(G))* = kG ⊗ k^G on the index-matched basis d*n+e
    G, _, D, _ = c2
    n = G.order
    Ds = dual_hopf(D)
    for d, e, dp, ep in ((a, b, c, f) for a in range(n) for b in range(n) for c in range(n) for f in range(n)):
        expect = {G.mul(d, dp) * n + e: 1} if e == ep else {}
        assert Ds.mul_basis(d * n + e, dp * n + ep) == expect


def test_opposite_and_coopposite():
    H = group_algebra(catalog_group("C3"))
    assert opposite(H).algebra.table() == H.algebra.table()
    assert coopposite(H).comult == H.comult


def test_opposite_dual_of_drin_c3_is_hopf(c3):
    assert check_hopf(opposite(dual_hopf(c3[2]))).ok


def test_element_inverse():
    H = group_algebra(catalog_group("C2"))
    assert element_inverse(H.algebra, {0: 1}) == {0: 1}
    assert element_inverse(H.algebra, {1: 1}) == {1: 1}
    with pytest.raises(NotInvertible):
        element_inverse(H.algebra, {0: 1, 1: 1})  # 1 + g is a zero divisor


def test_r_inverse_matches_antipode_on_first_leg(s3):
    _, _, D, R = s3
    inv = multileg_inverse(R.element)
    expect = {}
    for (i, j), c in R.element.coeffs.items():
        for k, v in D.S({i: 1}).items():
            expect[(k, j)] = expect.get((k, j), 0) + c * v
    assert inv.coeffs == {k: v for k, v in expect.items() if v}


def test_semisimplicity():
    assert check_semisimple(group_algebra(catalog_group("C2")).algebra)
    assert not check_semisimple(truncated_polynomial_algebra(2))
    assert check_semisimple(reflective("C3").base)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4))
def test_semisimple_cyclic_vs_truncated(n, k):
    # kC_n is semisimple over Q; k[x]/(x^k) is semisimple only when k = 1
    from reflectum.doubles import cyclic_group
    assert check_semisimple(group_algebra(cyclic_group(n)).algebra)
    assert check_semisimple(truncated_polynomial_algebra(k)) == (k == 1)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["C1", "C2", "C3", "S3"]))
def test_group_algebras_pass_hopf_axioms(name):
    assert check_hopf(group_algebra(catalog_group(name))).ok
    assert check_hopf(dual_hopf(group_algebra(catalog_group(name)))).ok


def test_bad_coalgebra_shape():
    with pytest.raises(Exception):
        Coalgebra(2, [{(0, 0): 1}], [1, 1])
