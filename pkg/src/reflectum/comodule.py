"""Left comodule algebras, quantum K-matrices and their axiom checks."""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .hopf import (
    Algebra,
    HopfAlgebra,
    NotInvertible,
    VerificationReport,
    first_failure,
    multileg_inverse,
)
from .linalg import (
    LinMapOnLeg,
    Matrix,
    MultiLegElement,
    accumulate,
    apply_map_to_leg,
    clean,
    diff_witness,
    embed_legs,
)
from .modules import Module, ModuleMismatch


class RibbonMissing(ValueError):
    pass


class ComoduleAlgebra:
    """Algebra A with a left coaction δ: A → H⊗A.

    ``coaction[j]`` is a dict {(h, k): c} meaning δ(a_j) = Σ c e_h⊗a_k.
    """

    def __init__(self, host: HopfAlgebra, algebra: Algebra, coaction: Sequence[Mapping],
                 name: str = ""):
        if len(coaction) != algebra.dim:
            raise ValueError("coaction length does not match dim(A)")
        self.host = host
        self.algebra = algebra
        self.coaction = [clean(c) for c in coaction]
        self.name = name or algebra.name

    @property
    def legs(self) -> tuple:
        return (self.host, self.algebra)

    def delta(self, x: Mapping) -> dict:
        out: dict = {}
        for j, a in x.items():
            for hk, c in self.coaction[j].items():
                accumulate(out, hk, a * c)
        return out

    def delta_el(self, x: Mapping) -> MultiLegElement:
        return MultiLegElement(self.legs, self.delta(x))

    def coaction_map(self) -> LinMapOnLeg:
        return LinMapOnLeg(self.algebra, self.legs, lambda j: self.coaction[j])

    def __repr__(self):
        return f"ComoduleAlgebra({self.name}, over {self.host.name})"


def trivial_comodule_algebra(H: HopfAlgebra) -> ComoduleAlgebra:
    """A = k with δ(1) = 1_H⊗1."""
    k = Algebra(1, [[{0: 1}]], {0: 1}, ["1"], name="k")
    return ComoduleAlgebra(H, k, [{(u, 0): c for u, c in H.unit.items()}], "k")


def regular_comodule_algebra(H: HopfAlgebra) -> ComoduleAlgebra:
    """A = H with δ = Δ. The algebra leg is H itself."""
    return ComoduleAlgebra(H, H.algebra, H.comult, f"{H.name} (regular)")


def check_comodule_algebra(CA: ComoduleAlgebra, pairs: Iterable | None = None,
                           report: VerificationReport | None = None) -> VerificationReport:
    """Coassociativity, counit, multiplicativity and unit for δ.

    Multiplicativity is checked on ``pairs`` (default: all basis pairs).
    """
    H, A = CA.host, CA.algebra
    report = report or VerificationReport(f"comodule algebra: {CA.name} over {H.name}")
    legs2 = CA.legs

    def coassoc(j):
        el = MultiLegElement(legs2, CA.coaction[j])
        lhs = apply_map_to_leg(el, 0, H.delta_map())
        rhs = apply_map_to_leg(el, 1, CA.coaction_map())
        return lhs.coeffs, rhs.coeffs

    w = first_failure(range(A.dim), coassoc)
    report.add("(Δ⊗Id)δ = (Id⊗δ)δ", w is None, "comod-coassoc", w)

    def counit(j):
        out: dict = {}
        for (h, k), c in CA.coaction[j].items():
            accumulate(out, k, c * H.counit.get(h, 0))
        return out, {j: 1}

    w = first_failure(range(A.dim), counit)
    report.add("(ε⊗Id)δ = Id", w is None, "comod-counit", w)

    if pairs is None:
        pairs = itertools.product(range(A.dim), repeat=2)

    def mult(ij):
        i, j = ij
        lhs = CA.delta(A.mul_basis(i, j))
        rhs = (MultiLegElement(legs2, CA.coaction[i]) * MultiLegElement(legs2, CA.coaction[j])).coeffs
        return lhs, rhs

    w = first_failure(pairs, mult)
    report.add("δ(ab) = δ(a)δ(b)", w is None, "comod-alg", w)
    d1 = CA.delta(A.unit)
    one = MultiLegElement.unit(legs2).coeffs
    report.add("δ(1) = 1⊗1", d1 == one, "comod-alg",
               {"index": [], "discrepancy": diff_witness(d1, one)})
    return report


# ---------------------------------------------------------------- K-matrices


class KMatrix:
    """Σ g_i⊗p_i in H⊗A for a comodule algebra A."""

    def __init__(self, comod: ComoduleAlgebra, element: MultiLegElement,
                 inverse: MultiLegElement | None = None):
        if element.legs[0] is not comod.host or element.legs[1] is not comod.algebra:
            raise ValueError("K-matrix must live in host⊗algebra")
        self.comod = comod
        self.element = element
        self._inverse = inverse

    @classmethod
    def from_coeffs(cls, comod: ComoduleAlgebra, coeffs: Matrix) -> "KMatrix":
        return cls(comod, MultiLegElement(comod.legs, {(i, j): v for i, j, v in coeffs.nonzero()}))

    @property
    def coeffs(self) -> Matrix:
        return self.element.matrix()

    @property
    def inverse(self) -> MultiLegElement:
        if self._inverse is None:
            self._inverse = multileg_inverse(self.element)
        return self._inverse

    @property
    def inverse_coeffs(self) -> Matrix:
        return self.inverse.matrix()

    def leg(self, a: int, b: int, legs) -> MultiLegElement:
        return embed_legs(self.element, (a - 1, b - 1), legs)

    def perturbed(self, index: tuple = None, delta=1) -> "KMatrix":
        """Copy with one coefficient shifted (fault injection)."""
        coeffs = dict(self.element.coeffs)
        if index is None:
            index = min(coeffs) if coeffs else (0, 0)
        coeffs[index] = coeffs.get(index, 0) + delta
        return KMatrix(self.comod, MultiLegElement(self.element.legs, coeffs))


def unit_kmatrix(comod: ComoduleAlgebra) -> KMatrix:
    return KMatrix(comod, MultiLegElement.unit(comod.legs))


def _witness(lhs: MultiLegElement, rhs: MultiLegElement) -> dict:
    return {"index": [], "discrepancy": diff_witness(lhs.coeffs, rhs.coeffs)}


def check_kmatrix(K: KMatrix, R, basis: Iterable[int] | None = None) -> VerificationReport:
    """Invertibility, K2, K3 and K1. ``basis`` restricts the K1 check to
    the listed basis elements of A (default: all); checking generators
    suffices because both sides of K1 are multiplicative in a."""
    CA = K.comod
    H, A = CA.host, CA.algebra
    report = VerificationReport(f"K-matrix axioms: {CA.name} over {H.name}")
    try:
        Kinv = K.inverse
        ok = (K.element * Kinv) == MultiLegElement.unit(CA.legs)
        report.add("K invertible", ok, "K-inv")
    except NotInvertible:
        report.add("K invertible", False, "K-inv", {"index": [], "discrepancy": {"K": "singular"}})
    legs3 = (H, H, A)
    r21 = R.leg(2, 1, legs3)
    r12 = R.leg(1, 2, legs3)
    r21inv = R.leg(2, 1, legs3, inverse=True)
    k13, k23 = K.leg(1, 3, legs3), K.leg(2, 3, legs3)

    lhs = apply_map_to_leg(K.element, 0, H.delta_map())
    rhs = k23 * r21 * k13 * r21inv
    report.add("(Δ⊗Id)K = K23 R21 K13 R21^-1", lhs == rhs, "K2", _witness(lhs, rhs))
    lhs = apply_map_to_leg(K.element, 1, CA.coaction_map())
    rhs = r21 * k13 * r12
    report.add("(Id⊗δ)K = R21 K13 R12", lhs == rhs, "K3", _witness(lhs, rhs))

    def k1(j):
        d = CA.delta_el({j: 1})
        return (K.element * d).coeffs, (d * K.element).coeffs

    w = first_failure(range(A.dim) if basis is None else basis, k1)
    report.add("K δ(a) = δ(a) K", w is None, "K1", w)
    return report


def ktilde(K: KMatrix, v: Mapping | None) -> KMatrix:
    """K(v^-1 ⊗ 1_A)."""
    if v is None:
        raise RibbonMissing("a verified ribbon element is required")
    from .hopf import element_inverse
    H = K.comod.host
    vinv = element_inverse(H.algebra, v)
    el = K.element * MultiLegElement.pure(K.comod.legs, (vinv, K.comod.algebra.unit))
    return KMatrix(K.comod, el)


def reflection_sides(R, Kt: KMatrix, reading: str = "printed"):
    """Both sides of the reflection equation in H⊗H⊗A.

    ``printed``: K̃23 R21 K̃13 R21 = R21 K̃13 R21 K̃23.
    ``R12``:     K̃23 R21 K̃13 R12 = R21 K̃13 R12 K̃23.
    """
    H, A = Kt.comod.host, Kt.comod.algebra
    legs3 = (H, H, A)
    r21 = R.leg(2, 1, legs3)
    last = r21 if reading == "printed" else R.leg(1, 2, legs3)
    k13, k23 = Kt.leg(1, 3, legs3), Kt.leg(2, 3, legs3)
    return k23 * r21 * k13 * last, r21 * k13 * last * k23


def check_reflection_equation(R, Kt: KMatrix | None) -> VerificationReport:
    """Reflection equation in both readings. The R12 reading, which is
    what K2/K3/K1 and the ribbon identities imply, gates the report; the
    reading with R21 in both places is recorded as informational."""
    report = VerificationReport("reflection equation")
    printed = "K̃23 R21 K̃13 R21 = R21 K̃13 R21 K̃23"
    derived = "K̃23 R21 K̃13 R12 = R21 K̃13 R12 K̃23"
    if Kt is None:
        report.skip(derived, "reflection-eq", "no ribbon element")
        report.skip(printed, "reflection-eq", "no ribbon element")
        return report
    lhs, rhs = reflection_sides(R, Kt, "R12")
    report.add(derived, lhs == rhs, "reflection-eq", _witness(lhs, rhs))
    lhs, rhs = reflection_sides(R, Kt, "printed")
    report.add(printed + " (as printed)", lhs == rhs, "reflection-eq", _witness(lhs, rhs),
               informational=True)
    return report


def check_k_equivalents(K: KMatrix, v: Mapping | None, R, basis=None) -> VerificationReport:
    """The ribbon-normalized K-axioms. Each identity is checked as printed
    and in the reading with trailing R12; the two readings are separate
    lines and the printed K2a/K3a/K2aa lines are informational."""
    report = VerificationReport("K-matrix equivalents (ribbon-normalized)")
    names = ["K2a", "K3a", "K1a", "K2aa"]
    if v is None:
        for n in names:
            report.skip(n, n, "no ribbon element")
        return report
    Kt = ktilde(K, v)
    CA = K.comod
    H, A = CA.host, CA.algebra
    legs3 = (H, H, A)
    r21, r12 = R.leg(2, 1, legs3), R.leg(1, 2, legs3)
    k13, k23 = Kt.leg(1, 3, legs3), Kt.leg(2, 3, legs3)
    dK = apply_map_to_leg(Kt.element, 0, H.delta_map())
    dA = apply_map_to_leg(Kt.element, 1, CA.coaction_map())

    rhs = k23 * r21 * k13 * r21
    report.add("(Δ⊗Id)K̃ = K̃23 R21 K̃13 R21 (as printed)", dK == rhs, "K2a", _witness(dK, rhs),
               informational=True)
    rhs = k23 * r21 * k13 * r12
    report.add("(Δ⊗Id)K̃ = K̃23 R21 K̃13 R12", dK == rhs, "K2a", _witness(dK, rhs))
    rhs = r21 * k13 * r21
    report.add("(Id⊗δ)K̃ = R21 K̃13 R21 (as printed)", dA == rhs, "K3a", _witness(dA, rhs),
               informational=True)
    rhs = r21 * k13 * r12
    report.add("(Id⊗δ)K̃ = R21 K̃13 R12", dA == rhs, "K3a", _witness(dA, rhs))

    def k1(j):
        d = CA.delta_el({j: 1})
        return (Kt.element * d).coeffs, (d * Kt.element).coeffs

    w = first_failure(range(A.dim) if basis is None else basis, k1)
    report.add("K̃ δ(a) = δ(a) K̃", w is None, "K1a", w)
    rhs = r21 * k13 * r21 * k23
    report.add("(Δ⊗Id)K̃ = R21 K̃13 R21 K̃23 (as printed)", dK == rhs, "K2aa", _witness(dK, rhs),
               informational=True)
    rhs = r21 * k13 * r12 * k23
    report.add("(Δ⊗Id)K̃ = R21 K̃13 R12 K̃23", dK == rhs, "K2aa", _witness(dK, rhs))
    return report


# ---------------------------------------------------------------- induced action


def induced_action(CA: ComoduleAlgebra, X: Module, M: Module) -> Module:
    """a ∗̃ (x⊗m) = (a[-1]·x)⊗(a[0]∗m) on X⊗M."""
    if X.algebra is not CA.host:
        raise ModuleMismatch("X must be a module over the host Hopf algebra")
    if M.algebra is not CA.algebra:
        raise ModuleMismatch("M must be a module over the comodule algebra")
    n = X.dim * M.dim
    action = []
    for j in range(CA.algebra.dim):
        total = Matrix.zeros(n, n)
        for (h, k), c in sorted(CA.coaction[j].items()):
            total = total + X.act_basis(h).kron(M.act_basis(k)).scale(c)
        action.append(total)
    return Module(CA.algebra, n, action, f"{X.name}⊗{M.name}")
