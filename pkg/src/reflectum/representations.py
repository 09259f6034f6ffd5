"""Braidings from K-matrices, braided-module axioms, type-B operators,
Doi-Hopf modules and the functors relating the module categories."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .comodule import KMatrix, RibbonMissing, induced_action
from .doubles import RMatrix, braiding_map, swap_matrix
from .hopf import VerificationReport, first_failure
from .linalg import DimensionMismatch, Matrix, accumulate, clean, diff_witness, invert_matrix
from .modules import Module, ModuleMismatch, regular_module, tensor_module, twisted_module


def _eye(n: int) -> Matrix:
    return Matrix.identity(n)


def _md(M: Matrix) -> dict:
    return {(i, j): v for i, j, v in M.nonzero()}


def _mat_witness(lhs: Matrix, rhs: Matrix) -> dict:
    return {"index": [], "discrepancy": diff_witness(_md(lhs), _md(rhs))}


def element_operator(coeffs: Mapping, modules: Sequence[Module]) -> Matrix:
    """Σ c act(e_i)⊗act(e_j)⊗... for a multi-leg coefficient dict."""
    n = 1
    for m in modules:
        n *= m.dim
    total = Matrix.zeros(n, n)
    for key, c in sorted(coeffs.items()):
        term = None
        for m, i in zip(modules, key):
            a = m.act_basis(i)
            term = a if term is None else term.kron(a)
        total = total + term.scale(c)
    return total


# ---------------------------------------------------------------- braidings


def braiding_e(K: KMatrix, X: Module, M: Module) -> Matrix:
    """e_{X,M}: x⊗m ↦ Σ (g_i·x)⊗(p_i∗m)."""
    if X.algebra is not K.comod.host:
        raise ModuleMismatch("X must be a module over the host Hopf algebra")
    if M.algebra is not K.comod.algebra:
        raise ModuleMismatch("M must be a module over the comodule algebra")
    return element_operator(K.element.coeffs, (X, M))


def braiding_e_inverse(K: KMatrix, X: Module, M: Module) -> Matrix:
    return element_operator(K.inverse.coeffs, (X, M))


def check_braided_module(K: KMatrix, R: RMatrix, X: Module, Y: Module, M: Module) -> VerificationReport:
    """Operator form of the braided module axioms with trivial associators."""
    CA = K.comod
    H = CA.host
    report = VerificationReport(f"braided module axioms on {X.name}, {Y.name}, {M.name}")
    e_XM = braiding_e(K, X, M)
    e_YM = braiding_e(K, Y, M)
    IX, IY, IM = _eye(X.dim), _eye(Y.dim), _eye(M.dim)

    XM = induced_action(CA, X, M)
    w = first_failure(range(CA.algebra.dim),
                      lambda j: (_md(e_XM @ XM.act_basis(j)), _md(XM.act_basis(j) @ e_XM)))
    report.add("e_{X,M} is an A-module map of (X⊗M, ∗̃)", w is None, "brmod-morphism", w)
    try:
        inv = braiding_e_inverse(K, X, M)
        ok = (e_XM @ inv).is_identity() and (inv @ e_XM).is_identity()
        report.add("e_{X,M} invertible via K^-1", ok, "brmod-inv")
    except Exception as exc:  # singular K
        report.add("e_{X,M} invertible via K^-1", False, "brmod-inv",
                   {"index": [], "discrepancy": {"K": str(exc)}})

    c_YX = braiding_map(R, Y, X)
    c_YX_inv = braiding_map(R, Y, X, inverse=True)
    lhs = braiding_e(K, tensor_module(H, X, Y), M)
    rhs = IX.kron(e_YM) @ c_YX.kron(IM) @ IY.kron(e_XM) @ c_YX_inv.kron(IM)
    report.add("e_{X⊗Y,M} = (Id⊗e_{Y,M})(c_{Y,X}⊗Id)(Id⊗e_{X,M})(c_{Y,X}^-1⊗Id)",
               lhs == rhs, "brmod2", _mat_witness(lhs, rhs))

    c_XY = braiding_map(R, X, Y)
    lhs = braiding_e(K, X, induced_action(CA, Y, M))
    rhs = c_YX.kron(IM) @ IY.kron(e_XM) @ c_XY.kron(IM)
    report.add("e_{X,Y⊗M} = (c_{Y,X}⊗Id)(Id⊗e_{X,M})(c_{X,Y}⊗Id)",
               lhs == rhs, "brmod1", _mat_witness(lhs, rhs))
    return report


# ---------------------------------------------------------------- type B


@dataclass
class TypeBOperators:
    """σ_1..σ_{n-1} on X^⊗n⊗M and the cylinder τ (K̃ on the X leg next
    to M), with the verification report."""

    sigmas: list
    tau: Matrix
    legs: int
    report: VerificationReport

    def generators(self) -> dict:
        out = {f"sigma_{i + 1}": s for i, s in enumerate(self.sigmas)}
        out["tau"] = self.tau
        return out


def typeB_operators(R: RMatrix, Kt: KMatrix | None, X: Module, M: Module, n: int = 2) -> TypeBOperators:
    if Kt is None:
        raise RibbonMissing("the cylinder operator needs a ribbon-normalized K-matrix")
    if n < 1:
        raise ValueError("leg count must be at least 1")
    dx, dm = X.dim, M.dim
    c = braiding_map(R, X, X)
    sigmas = []
    for i in range(n - 1):
        op = _eye(dx ** i).kron(c).kron(_eye(dx ** (n - i - 2) * dm))
        sigmas.append(op)
    e = braiding_e(Kt, X, M)
    tau = _eye(dx ** (n - 1)).kron(e)
    report = VerificationReport(f"type-B operators, {n} legs")

    for i in range(n - 2):
        a, b = sigmas[i], sigmas[i + 1]
        lhs, rhs = a @ b @ a, b @ a @ b
        report.add(f"σ{i + 1}σ{i + 2}σ{i + 1} = σ{i + 2}σ{i + 1}σ{i + 2}", lhs == rhs, "braid",
                   _mat_witness(lhs, rhs))
    for i in range(n - 1):
        for j in range(i + 2, n - 1):
            a, b = sigmas[i], sigmas[j]
            report.add(f"σ{i + 1}σ{j + 1} = σ{j + 1}σ{i + 1}", a @ b == b @ a, "braid",
                       _mat_witness(a @ b, b @ a))
    if n >= 2:
        s = sigmas[-1]
        lhs, rhs = s @ tau @ s @ tau, tau @ s @ tau @ s
        report.add(f"σ{n - 1}τσ{n - 1}τ = τσ{n - 1}τσ{n - 1}", lhs == rhs, "reflection-eq",
                   _mat_witness(lhs, rhs))
        for i in range(n - 2):
            a = sigmas[i]
            report.add(f"σ{i + 1}τ = τσ{i + 1}", a @ tau == tau @ a, "braid",
                       _mat_witness(a @ tau, tau @ a))
        for row in reflection_operator_rows(R, Kt, X, M):
            report.checks.append(row)
    return TypeBOperators(sigmas, tau, n, report)


def reflection_operator_rows(R: RMatrix, Kt: KMatrix, X: Module, M: Module) -> list:
    """Both readings of the reflection equation as operators on X⊗X⊗M."""
    dx, dm = X.dim, M.dim
    IM = _eye(dm)
    P = swap_matrix(dx, dx).kron(IM)
    c = braiding_map(R, X, X).kron(IM)
    r12 = P @ c
    r21 = c @ P
    k23 = _eye(dx).kron(braiding_e(Kt, X, M))
    k13 = P @ k23 @ P
    rep = VerificationReport("")
    lhs, rhs = k23 @ r21 @ k13 @ r12, r21 @ k13 @ r12 @ k23
    rep.add("K̃23 R21 K̃13 R12 = R21 K̃13 R12 K̃23 on X⊗X⊗M", lhs == rhs, "reflection-eq",
            _mat_witness(lhs, rhs))
    lhs, rhs = k23 @ r21 @ k13 @ r21, r21 @ k13 @ r21 @ k23
    rep.add("K̃23 R21 K̃13 R21 = R21 K̃13 R21 K̃23 on X⊗X⊗M (as printed)", lhs == rhs,
            "reflection-eq", _mat_witness(lhs, rhs), informational=True)
    return rep.checks


# ---------------------------------------------------------------- Doi-Hopf modules


@dataclass
class DoiHopfModule:
    """B-module with a compatible left C-comodule structure.

    ``coaction[m]`` is a dict {(c, m'): coef}: φ(e_m) = Σ coef c⊗e_m'.
    ``C`` is a TransmutedCoalgebra (module coalgebra over L = B.host).
    """

    B_module: Module
    coaction: list
    B: object  # ComoduleAlgebra
    C: object  # TransmutedCoalgebra

    @property
    def dim(self) -> int:
        return self.B_module.dim

    @property
    def L(self):
        return self.B.host

    def phi(self, m: Mapping) -> dict:
        out: dict = {}
        for k, a in m.items():
            for cm, v in self.coaction[k].items():
                accumulate(out, cm, a * v)
        return out


def doi_hopf_check(D: DoiHopfModule) -> VerificationReport:
    report = VerificationReport(f"Doi-Hopf module (dim {D.dim})")
    C = D.C.coalgebra
    B = D.B
    M = D.B_module
    report.add("B-module", M.check().ok, "module")
    if len(D.coaction) != D.dim:
        report.add("coaction shape", False, "Doi-Hopf",
                   {"index": [], "discrepancy": {"len": len(D.coaction)}})
        return report

    def coassoc(m):
        lhs: dict = {}
        rhs: dict = {}
        for (c, mp), v in D.coaction[m].items():
            for (a, b), w in C.comult[c].items():
                accumulate(lhs, (a, b, mp), v * w)
            for (b, mq), w in D.coaction[mp].items():
                accumulate(rhs, (c, b, mq), v * w)
        return lhs, rhs

    w = first_failure(range(D.dim), coassoc)
    report.add("(Δ̂⊗Id)φ = (Id⊗φ)φ", w is None, "comodule", w)

    def counit(m):
        out: dict = {}
        for (c, mp), v in D.coaction[m].items():
            accumulate(out, mp, v * C.counit.get(c, 0))
        return out, {m: 1}

    w = first_failure(range(D.dim), counit)
    report.add("(ε̂⊗Id)φ = Id", w is None, "comodule", w)

    def compat(bm):
        b, m = bm
        lhs = {}
        for k, v in M.action[b].apply({m: 1}).items():
            for cm, u in D.coaction[k].items():
                accumulate(lhs, cm, v * u)
        rhs: dict = {}
        for (h, q), x in B.coaction[b].items():
            for (c, mp), y in D.coaction[m].items():
                hc = D.C.act({h: 1}, {c: 1})
                bm0 = M.action[q].apply({mp: 1})
                for c2, u in hc.items():
                    for m2, z in bm0.items():
                        accumulate(rhs, (c2, m2), x * y * u * z)
        return lhs, rhs

    pairs = ((b, m) for b in range(B.algebra.dim) for m in range(D.dim))
    w = first_failure(pairs, compat)
    report.add("φ(b∗m) = (b[-1]⇀m[-1])⊗(b[0]∗m[0])", w is None, "Doi-Hopf", w)
    return report


def omega_functor(D: DoiHopfModule, RA) -> Module:
    """Module over the crossed product: ξ⋆m = <ξ, m[-1]> m[0], b⋆m = b∗m.
    ``RA`` supplies the crossed product basis a_j⊗ξ_d (index j*n+d)."""
    n = RA.H.dim
    dim = D.dim
    xi_ops = []
    for d in range(n):
        cols = [{} for _ in range(dim)]
        for m in range(dim):
            for (c, mp), v in D.coaction[m].items():
                if c == d:
                    accumulate(cols[m], mp, v)
        xi_ops.append(Matrix(dim, dim, cols))
    action = []
    for idx in range(RA.dim):
        j, d = divmod(idx, n)
        action.append(D.B_module.act_basis(j) @ xi_ops[d])
    return Module(RA.base, dim, action, f"Ω({D.B_module.name})")


def omega_inverse_functor(M: Module, RA) -> DoiHopfModule:
    """B-action along ι_A and φ(m) = Σ_d h_d⊗(ξ_d⋆m)."""
    if M.algebra is not RA.base:
        raise ModuleMismatch("M must be a module over the reflective algebra")
    n = RA.H.dim
    b_action = [M.act(RA.iota_A.column(j)) for j in range(RA.A.algebra.dim)]
    B_mod = Module(RA.A.algebra, M.dim, b_action, f"{M.name}|B")
    coaction = [dict() for _ in range(M.dim)]
    for d in range(n):
        op = M.act(RA.iota_Hstar.column(d))
        for m, col in enumerate(op.columns):
            for mp, v in col.items():
                accumulate(coaction[m], (d, mp), v)
    return DoiHopfModule(B_mod, coaction, RA.A, RA.transmuted)


def twist_doi_hopf(D: DoiHopfModule, P: Matrix) -> DoiHopfModule:
    """Transport along an invertible base change P (new basis = columns of P)."""
    Pinv = invert_matrix(P)
    B_mod = twisted_module(D.B_module, P)
    coaction = []
    for m in range(D.dim):
        out: dict = {}
        for k, a in P.column(m).items():
            for (c, mp), v in D.coaction[k].items():
                for q, u in Pinv.column(mp).items():
                    accumulate(out, (c, q), a * v * u)
        coaction.append(out)
    return DoiHopfModule(B_mod, coaction, D.B, D.C)


def random_invertible(n: int, rng: random.Random, spread: int = 2) -> Matrix:
    """Product of unipotent lower and upper triangular integer matrices."""
    def tri(lower):
        cols = []
        for j in range(n):
            col = {j: 1}
            for i in range(n):
                if (i > j if lower else i < j) and rng.random() < 0.3:
                    v = rng.randint(-spread, spread)
                    if v:
                        col[i] = v
            cols.append(col)
        return Matrix(n, n, cols)
    return tri(True) @ tri(False)


def random_twisted_modules(M: Module, count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [twisted_module(M, random_invertible(M.dim, rng), f"{M.name}#{k}") for k in range(count)]


# ---------------------------------------------------------------- functors F and G


def braiding_from_coaction(D: DoiHopfModule, X: Module) -> Matrix:
    """e_X(x⊗m) = (m[-1]·x)⊗m[0] on X⊗M (C = H as a space)."""
    if X.algebra is not D.L:
        raise ModuleMismatch("X must be a module over the host Hopf algebra")
    dm = D.dim
    cols = [{} for _ in range(X.dim * dm)]
    for m in range(dm):
        for (c, mp), v in D.coaction[m].items():
            op = X.act_basis(c)
            for x in range(X.dim):
                col = cols[x * dm + m]
                for k, u in op.column(x).items():
                    accumulate(col, k * dm + mp, u * v)
    return Matrix(X.dim * dm, X.dim * dm, [clean(c) for c in cols])


def coaction_from_braiding(H, M_dim: int, e_H: Matrix) -> list:
    """φ(m) = e_H(1_H⊗m) for e on the regular H-module tensor M."""
    if e_H.shape != (H.dim * M_dim, H.dim * M_dim):
        raise DimensionMismatch("operator does not act on H⊗M")
    out = []
    for m in range(M_dim):
        vec: dict = {}
        for u, a in H.unit.items():
            for k, v in e_H.column(u * M_dim + m).items():
                accumulate(vec, divmod(k, M_dim), a * v)
        out.append(vec)
    return out


# ---------------------------------------------------------------- R_H(A) acting on Y⊗M


def rha_induced_action(H, R: RMatrix, RA, Y: Module, M: Module) -> Module:
    """Module structure of R_H(A) on Y⊗M from the explicit formulas for
    ι_A(a) and ι(ξ); general basis elements act by composition."""
    if Y.algebra is not H or M.algebra is not RA.base:
        raise ModuleMismatch("Y over H and M over the reflective algebra are required")
    n = H.dim
    dy, dm = Y.dim, M.dim
    a_ops = []
    for j in range(RA.A.algebra.dim):
        total = Matrix.zeros(dy * dm, dy * dm)
        for (h, q), c in sorted(RA.A.coaction[j].items()):
            total = total + Y.act_basis(h).kron(M.act(RA.iota_A.column(q))).scale(c)
        a_ops.append(total)
    terms = sorted(R.element.coeffs.items())
    xi_ops = [Matrix.zeros(dy * dm, dy * dm) for _ in range(n)]
    m_xi = [M.act(RA.iota_Hstar.column(d)) for d in range(n)]
    for (i, ti), ci in terms:
        for (j, tj), cj in terms:
            y_op = Y.act(H.mul_basis(j, ti))
            for d in range(n):
                for e, w in H.mul_many({tj: 1}, {d: 1}, {i: 1}).items():
                    xi_ops[e] = xi_ops[e] + y_op.kron(m_xi[d]).scale(ci * cj * w)
    action = []
    for idx in range(RA.dim):
        j, d = divmod(idx, n)
        action.append(a_ops[j] @ xi_ops[d])
    return Module(RA.base, dy * dm, action, f"{Y.name}⊗{M.name}")


# ---------------------------------------------------------------- Yetter-Drinfeld


@dataclass
class YDModule:
    """Left H-action ``action[e]`` and left coaction ∂(v) = Σ h⊗v'."""

    host: object
    dim: int
    action: list
    coaction: list

    def act(self, h: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for e, a in h.items():
            for k, b in self.action[e].apply(v).items():
                accumulate(out, k, a * b)
        return out


def yd_translate(H, D, M: Module) -> YDModule:
    """Restrict a Drin(H)-module along ι_H and read off ∂(v) = Σ_d h_d⊗(ξ_d⋄v)."""
    if M.algebra is not D:
        raise ModuleMismatch("M must be a module over the double")
    n = H.dim
    action = [M.act({k * n + e: c for k, c in H.counit.items()}) for e in range(n)]
    coaction = [dict() for _ in range(M.dim)]
    for d in range(n):
        op = M.act({d * n + u: c for u, c in H.unit.items()})
        for v, col in enumerate(op.columns):
            for vp, c in col.items():
                accumulate(coaction[v], (d, vp), c)
    return YDModule(H, M.dim, action, coaction)


def yd_translate_back(Y: YDModule, D) -> Module:
    """(ξ_d⊗h_e)·v = ξ_d⋄(h_e⊙v) with ξ⋄v = <ξ, v[-1]> v[0]."""
    n = Y.host.dim
    dim = Y.dim
    xi_ops = []
    for d in range(n):
        cols = [{} for _ in range(dim)]
        for v in range(dim):
            for (h, vp), c in Y.coaction[v].items():
                if h == d:
                    accumulate(cols[v], vp, c)
        xi_ops.append(Matrix(dim, dim, cols))
    action = [xi_ops[d] @ Y.action[e] for d in range(n) for e in range(n)]
    return Module(D, dim, action, "YD→Drin")


def check_yd(Y: YDModule) -> VerificationReport:
    H = Y.host
    n = H.dim
    report = VerificationReport(f"Yetter-Drinfeld module (dim {Y.dim})")
    Mod = Module(H, Y.dim, Y.action, "YD action")
    report.extend(Mod.check(), "")

    def coact(v: Mapping) -> dict:
        out: dict = {}
        for k, a in v.items():
            for hv, c in Y.coaction[k].items():
                accumulate(out, hv, a * c)
        return out

    def coassoc(v):
        lhs: dict = {}
        rhs: dict = {}
        for (h, vp), c in Y.coaction[v].items():
            for (a, b), w in H.comult[h].items():
                accumulate(lhs, (a, b, vp), c * w)
            for (b, vq), w in Y.coaction[vp].items():
                accumulate(rhs, (h, b, vq), c * w)
        return lhs, rhs

    w = first_failure(range(Y.dim), coassoc)
    report.add("(Δ⊗Id)∂ = (Id⊗∂)∂", w is None, "YD", w)
    w = first_failure(range(Y.dim), lambda v: (
        {vp: c * H.counit.get(h, 0) for (h, vp), c in Y.coaction[v].items() if H.counit.get(h, 0)},
        {v: 1}))
    report.add("(ε⊗Id)∂ = Id", w is None, "YD", w)

    def compat(ev):
        e, v = ev
        lhs = coact(Y.act({e: 1}, {v: 1}))
        rhs: dict = {}
        for (a, b, c), w in H.delta2({e: 1}).items():
            sc = H.S({c: 1})
            act_b = Y.action[b]
            for (h, vp), x in Y.coaction[v].items():
                for g, y in H.mul_many({a: 1}, {h: 1}, sc).items():
                    for k, z in act_b.apply({vp: 1}).items():
                        accumulate(rhs, (g, k), w * x * y * z)
        return lhs, rhs

    pairs = ((e, v) for e in range(n) for v in range(Y.dim))
    w = first_failure(pairs, compat)
    report.add("∂(h⊙v) = h1 v[-1] S(h3)⊗(h2⊙v[0])", w is None, "YD", w)
    return report


def regular_modules(H, CA) -> tuple:
    """Regular H-module and regular module over the comodule algebra."""
    return regular_module(H, f"reg {H.name}"), regular_module(CA.algebra, f"reg {CA.name}")


def conjugation_yd_module(G, H) -> YDModule:
    """kG with h⊙v_g = v_{hgh^-1} and ∂(v_g) = g⊗v_g, over H = kG."""
    n = G.order
    action = [Matrix(n, n, [{G.mul(h, g, G.inv(h)): 1} for g in range(n)]) for h in range(n)]
    coaction = [{(g, g): 1} for g in range(n)]
    return YDModule(H, n, action, coaction)
