"""Finite groups, group algebras, Drinfeld doubles and R-matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .hopf import (
    Algebra,
    Coalgebra,
    HopfAlgebra,
    NotInvertible,
    VerificationReport,
    antipode_solve,
    dual_hopf,
    first_failure,
    multileg_inverse,
)
from .modules import ModuleMismatch
from .linalg import (
    Matrix,
    MultiLegElement,
    accumulate,
    apply_map_to_leg,
    clean,
    diff_witness,
    embed_legs,
    nullspace,
)


class InvalidGroup(ValueError):
    pass


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    element_labels: tuple
    mult_table: tuple  # mult_table[a][b] = index of a*b
    inverse_table: tuple
    name: str = ""

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                   name: str = "") -> "FiniteGroup":
        n = len(table)
        if n == 0:
            raise InvalidGroup("empty group")
        rows = tuple(tuple(int(v) for v in r) for r in table)
        for r in rows:
            if len(r) != n or sorted(r) != list(range(n)):
                raise InvalidGroup("multiplication table is not a Latin square")
        for c in range(n):
            if sorted(rows[r][c] for r in range(n)) != list(range(n)):
                raise InvalidGroup("multiplication table is not a Latin square")
        if any(rows[0][b] != b or rows[b][0] != b for b in range(n)):
            raise InvalidGroup("index 0 is not the identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise InvalidGroup(f"not associative at {(a, b, c)}")
        inv = tuple(next(b for b in range(n) if rows[a][b] == 0) for a in range(n))
        labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(n))
        if len(labels) != n:
            raise InvalidGroup("label count does not match order")
        return cls(n, labels, rows, inv, name)

    def mul(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.mult_table[out][x]
        return out

    def inv(self, x: int) -> int:
        return self.inverse_table[x]

    def is_abelian(self) -> bool:
        return all(self.mult_table[a][b] == self.mult_table[b][a]
                   for a in range(self.order) for b in range(self.order))

    def to_json(self) -> dict:
        return {"order": self.order, "elements": list(self.element_labels),
                "table": [list(r) for r in self.mult_table]}


def trivial_group() -> FiniteGroup:
    return FiniteGroup.from_table([[0]], ["e"], "1")


def cyclic_group(n: int) -> FiniteGroup:
    labels = ["e"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)], labels, f"C{n}")


def symmetric_group_3() -> FiniteGroup:
    perms = list(itertools.permutations(range(3)))  # identity first
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # (p*q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(3))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    labels = ["e" if p == (0, 1, 2) else "".join(str(i + 1) for i in p) for p in perms]
    return FiniteGroup.from_table(table, labels, "S3")


CATALOG = {
    "trivial": trivial_group,
    "C1": trivial_group,
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "S3": symmetric_group_3,
}


def catalog_group(name: str) -> FiniteGroup:
    try:
        return CATALOG[name]()
    except KeyError:
        raise InvalidGroup(f"unknown catalog group {name!r}; known: {sorted(CATALOG)}") from None


# ---------------------------------------------------------------- group and function algebras


def group_algebra(G: FiniteGroup) -> HopfAlgebra:
    n = G.order
    mult = [[{G.mult_table[a][b]: 1} for b in range(n)] for a in range(n)]
    alg = Algebra(n, mult, {0: 1}, list(G.element_labels), name=f"k{G.name}")
    coal = Coalgebra(n, [{(g, g): 1} for g in range(n)], [1] * n)
    S = Matrix(n, n, [{G.inv(g): 1} for g in range(n)])
    H = HopfAlgebra(alg, coal, S, S, name=alg.name)
    H.r_matrix = RMatrix(H, MultiLegElement.unit((H, H)))
    return H


def function_algebra(G: FiniteGroup) -> HopfAlgebra:
    return dual_hopf(group_algebra(G), name=f"k^{G.name}")


# ---------------------------------------------------------------- harpoons


def harpoon_left(H: HopfAlgebra, h: Mapping, xi: Mapping) -> dict:
    """h ↠ ξ with <h↠ξ, h'> = <ξ, h'h>."""
    out: dict = {}
    for m in range(H.dim):
        v = 0
        prod = H.mul({m: 1}, h)
        for k, c in prod.items():
            v += c * xi.get(k, 0)
        if v:
            out[m] = v
    return clean(out)


def harpoon_right(H: HopfAlgebra, xi: Mapping, h: Mapping) -> dict:
    """ξ ↞ h with <ξ↞h, h'> = <ξ, hh'>."""
    out: dict = {}
    for m in range(H.dim):
        v = 0
        prod = H.mul(h, {m: 1})
        for k, c in prod.items():
            v += c * xi.get(k, 0)
        if v:
            out[m] = v
    return clean(out)


class Harpoons:
    """Cached harpoon matrices on basis elements of H."""

    def __init__(self, H: HopfAlgebra):
        self.H = H
        n = H.dim
        # left[e][d] = e_e ↠ ξ_d as sparse dict;  <ξ_d, h_m h_e> on ξ_m
        self._left = [[{} for _ in range(n)] for _ in range(n)]
        self._right = [[{} for _ in range(n)] for _ in range(n)]
        for m in range(n):
            for e in range(n):
                for d, c in H.mul_basis(m, e).items():
                    self._left[e][d][m] = c
                for d, c in H.mul_basis(e, m).items():
                    self._right[e][d][m] = c

    def left(self, h: Mapping, xi: Mapping) -> dict:
        out: dict = {}
        for e, a in h.items():
            for d, b in xi.items():
                for m, c in self._left[e][d].items():
                    accumulate(out, m, a * b * c)
        return out

    def right(self, xi: Mapping, h: Mapping) -> dict:
        out: dict = {}
        for e, a in h.items():
            for d, b in xi.items():
                for m, c in self._right[e][d].items():
                    accumulate(out, m, a * b * c)
        return out


def hstar_mul(H: HopfAlgebra, xi: Mapping, zeta: Mapping) -> dict:
    """Convolution product in H*: (ξζ)(h) = ξ(h1)ζ(h2)."""
    out: dict = {}
    for k in range(H.dim):
        v = 0
        for (i, j), c in H.comult[k].items():
            a = xi.get(i)
            if a:
                b = zeta.get(j)
                if b:
                    v += c * a * b
        if v:
            out[k] = v
    return clean(out)


# ---------------------------------------------------------------- R-matrices


class RMatrix:
    """Σ s_i⊗t_i in H⊗H with its inverse; verification is separate."""

    def __init__(self, host: HopfAlgebra, element: MultiLegElement,
                 inverse: MultiLegElement | None = None):
        if not (element.legs[0] is host and element.legs[1] is host and len(element.legs) == 2):
            raise ValueError("R-matrix must live in host⊗host")
        self.host = host
        self.element = element
        self._inverse = inverse

    @classmethod
    def from_coeffs(cls, host: HopfAlgebra, coeffs: Matrix) -> "RMatrix":
        return cls(host, MultiLegElement((host, host),
                                         {(i, j): v for i, j, v in coeffs.nonzero()}))

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

    def terms(self):
        """Pairs (s, t) of basis vectors with coefficient folded into s."""
        return [({i: c}, {j: 1}) for (i, j), c in sorted(self.element.coeffs.items())]

    def inverse_terms(self):
        return [({i: c}, {j: 1}) for (i, j), c in sorted(self.inverse.coeffs.items())]

    def leg(self, a: int, b: int, legs: Sequence, inverse: bool = False) -> MultiLegElement:
        """R_ab (or its inverse) placed in the given legs (1-based a, b)."""
        x = self.inverse if inverse else self.element
        return embed_legs(x, (a - 1, b - 1), legs)

    def r21_r12(self) -> MultiLegElement:
        legs = (self.host, self.host)
        return self.leg(2, 1, legs) * self.element


def drinfeld_double(H: HopfAlgebra, solve_antipode: bool = True) -> tuple[HopfAlgebra, RMatrix]:
    """Drin(H) on the basis ξ_d⊗h_e (flat index d*n + e).

    The product is (ξ h)(ξ' h') = ((h3↠ξ'↞S(h1)) ·_{H*} ξ) ⊗ h2 h', which
    puts (H*)^op and H in as subalgebras; the coalgebra is the tensor
    product of H* and H.
    """
    n = H.dim
    N = n * n
    hp = Harpoons(H)
    epsH = H.counit  # = unit of H*
    unitH = H.unit

    # Δ²(h_e) terms, and conjugation data (h_c ↠ ξ_{d'} ↞ S(h_a))
    d2 = [sorted(H.delta2({e: 1}).items()) for e in range(n)]
    S_cols = [H.antipode.column(a) for a in range(n)]
    conj_cache: dict = {}

    def conj(a, c, dp):
        key = (a, c, dp)
        r = conj_cache.get(key)
        if r is None:
            r = conj_cache[key] = hp.right(hp.left({c: 1}, {dp: 1}), S_cols[a])
        return r

    def product(i, j):
        d, e = divmod(i, n)
        dp, ep = divmod(j, n)
        out: dict = {}
        for (a, b, c), coef in d2[e]:
            xi = conj(a, c, dp)
            if not xi:
                continue
            left = hstar_mul(H, xi, {d: 1})
            right = H.mul_basis(b, ep)
            for k, u in left.items():
                for q, w in right.items():
                    accumulate(out, k * n + q, coef * u * w)
        return out

    labels = [f"ξ{H.labels[d]}⊗{H.labels[e]}" for d in range(n) for e in range(n)]
    unit = {k * n + u: a * b for k, a in epsH.items() for u, b in unitH.items()}
    if N <= 400:
        alg = Algebra(N, [[product(i, j) for j in range(N)] for i in range(N)], unit, labels,
                      name=f"Drin({H.name})")
    else:
        alg = Algebra(N, mult_fn=product, unit=unit, labels=labels, name=f"Drin({H.name})")

    comult = []
    for d in range(n):
        dstar = {}
        for i in range(n):
            for j in range(n):
                c = H.mul_basis(i, j).get(d)
                if c:
                    dstar[(i, j)] = c
        for e in range(n):
            row = {}
            for (i, j), c in dstar.items():
                for (a, b), w in H.comult[e].items():
                    row[(i * n + a, j * n + b)] = c * w
            comult.append(row)
    counit = {d * n + e: a * b for d, a in unitH.items() for e, b in epsH.items()}
    coal = Coalgebra(N, comult, counit)

    if solve_antipode:
        S = antipode_solve(alg, coal)
    else:
        S = _double_antipode_candidate(H, alg)
    D = HopfAlgebra(alg, coal, S, name=f"Drin({H.name})")

    # R = Σ_d (ξ_d⊗1)⊗(ε⊗h_d)
    coeffs = {}
    for d in range(n):
        for u, a in unitH.items():
            for k, b in epsH.items():
                accumulate(coeffs, (d * n + u, k * n + d), a * b)
    R = RMatrix(D, MultiLegElement((D, D), coeffs))
    D.r_matrix = R
    D.base = H
    return D, R


def _double_antipode_candidate(H: HopfAlgebra, alg: Algebra) -> Matrix:
    """S(ξ h) = S(h) S*^{-1}(ξ) computed in Drin(H); callers verify it."""
    n = H.dim
    cols = []
    for d in range(n):
        # antipode of (H*)^op is the inverse of the transpose of S
        xi = {}
        for k in range(n):
            c = H.antipode_inverse.column(k).get(d)
            if c:
                xi[k] = c
        xi_el = {k * n + u: c * a for k, c in xi.items() for u, a in H.unit.items()}
        for e in range(n):
            sh = {k * n + m: b * a for m, a in H.antipode.column(e).items()
                  for k, b in H.counit.items()}
            cols.append(alg.mul(sh, xi_el))
    return Matrix(n * n, n * n, cols)


def drin_group_product_closed_form(G: FiniteGroup) -> list:
    """(δ_x y)(δ_x' y') = δ_{x, y x' y^-1} δ_x y y' on flat index x*|G|+y."""
    n = G.order
    table = []
    for i in range(n * n):
        x, y = divmod(i, n)
        row = []
        for j in range(n * n):
            xp, yp = divmod(j, n)
            if x == G.mul(y, xp, G.inv(y)):
                row.append({x * n + G.mul(y, yp): 1})
            else:
                row.append({})
        table.append(row)
    return table


# ---------------------------------------------------------------- verification


def _leg_map(x: MultiLegElement, leg: int, fmap) -> MultiLegElement:
    return apply_map_to_leg(x, leg, fmap)


def check_quasitriangular(H: HopfAlgebra, R: RMatrix | MultiLegElement | Matrix) -> VerificationReport:
    if isinstance(R, Matrix):
        R = RMatrix.from_coeffs(H, R)
    elif isinstance(R, MultiLegElement):
        R = RMatrix(H, R)
    report = VerificationReport(f"quasitriangularity: {H.name}")
    legs2 = (H, H)
    legs3 = (H, H, H)
    Rel = R.element
    try:
        Rinv = R.inverse
        report.add("R invertible", True, "R-inv")
    except NotInvertible:
        report.add("R invertible", False, "R-inv",
                   {"index": [], "discrepancy": {"R": "no two-sided inverse"}})
        Rinv = None

    lhs = _leg_map(Rel, 0, H.delta_map())
    rhs = R.leg(1, 3, legs3) * R.leg(2, 3, legs3)
    report.add("(Δ⊗Id)R = R13 R23", lhs == rhs, "QT1",
               {"index": [], "discrepancy": diff_witness(lhs.coeffs, rhs.coeffs)})
    lhs = _leg_map(Rel, 1, H.delta_map())
    rhs = R.leg(1, 3, legs3) * R.leg(1, 2, legs3)
    report.add("(Id⊗Δ)R = R13 R12", lhs == rhs, "QT2",
               {"index": [], "discrepancy": diff_witness(lhs.coeffs, rhs.coeffs)})

    def qt3(h):
        dh = MultiLegElement(legs2, H.comult[h])
        return (Rel * dh).coeffs, (dh.swap((1, 0)) * Rel).coeffs

    w = first_failure(range(H.dim), qt3)
    report.add("R Δ(h) = Δop(h) R", w is None, "QT3", w)

    one = MultiLegElement((H,), {(k,): c for k, c in H.unit.items()})
    e1 = _leg_map(Rel, 0, H.eps_map())
    e2 = _leg_map(Rel, 1, H.eps_map())
    report.add("(ε⊗Id)R = 1", e1 == one, "QT4",
               {"index": [], "discrepancy": diff_witness(e1.coeffs, one.coeffs)})
    report.add("(Id⊗ε)R = 1", e2 == one, "QT4",
               {"index": [], "discrepancy": diff_witness(e2.coeffs, one.coeffs)})
    if Rinv is not None:
        sr = _leg_map(Rel, 0, H.S_map())
        report.add("R^-1 = (S⊗Id)R", sr == Rinv, "QT5",
                   {"index": [], "discrepancy": diff_witness(sr.coeffs, Rinv.coeffs)})
        sri = _leg_map(Rinv, 1, H.S_map())
        report.add("R = (Id⊗S)R^-1", sri == Rel, "QT5",
                   {"index": [], "discrepancy": diff_witness(sri.coeffs, Rel.coeffs)})
    else:
        report.skip("R^-1 = (S⊗Id)R", "QT5", "R not invertible")
        report.skip("R = (Id⊗S)R^-1", "QT5", "R not invertible")
    ss = _leg_map(_leg_map(Rel, 0, H.S_map()), 1, H.S_map())
    report.add("R = (S⊗S)R", ss == Rel, "QT5",
               {"index": [], "discrepancy": diff_witness(ss.coeffs, Rel.coeffs)})
    return report


def check_qybe(H: HopfAlgebra, R: RMatrix) -> VerificationReport:
    report = VerificationReport(f"Yang-Baxter: {H.name}")
    legs = (H, H, H)
    r12, r13, r23 = R.leg(1, 2, legs), R.leg(1, 3, legs), R.leg(2, 3, legs)
    lhs = r12 * r13 * r23
    rhs = r23 * r13 * r12
    report.add("R12 R13 R23 = R23 R13 R12", lhs == rhs, "QYBE",
               {"index": [], "discrepancy": diff_witness(lhs.coeffs, rhs.coeffs)})
    return report


def braiding_map(R: RMatrix, X, Y, inverse: bool = False) -> Matrix:
    """c_{X,Y}: x⊗y ↦ Σ (t_i·y)⊗(s_i·x), as a matrix X⊗Y → Y⊗X.

    With ``inverse`` the map Y⊗X → X⊗Y, y⊗x ↦ Σ (s^i·x)⊗(t^i·y), is
    returned.
    """
    if X.algebra is not R.host or Y.algebra is not R.host:
        raise ModuleMismatch("modules are not over the R-matrix host")
    if not inverse:
        total = None
        for (i, j), c in sorted(R.element.coeffs.items()):
            term = Y.act_basis(j).kron(X.act_basis(i)).scale(c)
            total = term if total is None else total + term
        return (total or Matrix.zeros(X.dim * Y.dim, X.dim * Y.dim)) @ swap_matrix(X.dim, Y.dim)
    total = None
    for (i, j), c in sorted(R.inverse.coeffs.items()):
        term = X.act_basis(i).kron(Y.act_basis(j)).scale(c)
        total = term if total is None else total + term
    return (total or Matrix.zeros(X.dim * Y.dim, X.dim * Y.dim)) @ swap_matrix(Y.dim, X.dim)


def swap_matrix(p: int, q: int) -> Matrix:
    """P: V_p⊗V_q → V_q⊗V_p, u⊗w ↦ w⊗u."""
    return Matrix(p * q, p * q, [{(k % q) * p + k // q: 1} for k in range(p * q)])


# ---------------------------------------------------------------- ribbon


def drinfeld_element(H: HopfAlgebra, R: RMatrix) -> dict:
    """u = Σ S(t_i) s_i."""
    out: dict = {}
    for (i, j), c in R.element.coeffs.items():
        for k, v in H.mul(H.S({j: 1}), {i: 1}).items():
            accumulate(out, k, c * v)
    return out


def verify_ribbon(H: HopfAlgebra, R: RMatrix, v: Mapping) -> VerificationReport:
    report = VerificationReport(f"ribbon element: {H.name}")
    v = clean(v)
    w = first_failure(range(H.dim), lambda i: (H.mul(v, {i: 1}), H.mul({i: 1}, v)))
    report.add("v central", w is None, "ribbon", w)
    from .hopf import element_inverse
    try:
        element_inverse(H.algebra, v)
        report.add("v invertible", True, "ribbon")
    except NotInvertible:
        report.add("v invertible", False, "ribbon", {"index": [], "discrepancy": {"v": "singular"}})
    legs = (H, H)
    q = R.r21_r12()
    dv = MultiLegElement(legs, H.delta(v))
    vv = MultiLegElement.pure(legs, (v, v))
    lhs, rhs = dv * q, vv
    report.add("Δ(v) = (v⊗v)(R21 R12)^-1", lhs == rhs, "ribbon",
               {"index": [], "discrepancy": diff_witness(lhs.coeffs, rhs.coeffs)})
    sv = H.S(v)
    report.add("S(v) = v", sv == v, "ribbon", {"index": [], "discrepancy": diff_witness(sv, v)})
    return report


def center_basis(A: Algebra) -> list[dict]:
    n = A.dim
    rows = []
    for i in range(n):
        # coefficient rows of x e_i - e_i x in the unknown x
        eqs: dict = {}
        for j in range(n):
            for k, c in A.mul_basis(j, i).items():
                accumulate(eqs.setdefault(k, {}), j, c)
            for k, c in A.mul_basis(i, j).items():
                accumulate(eqs.setdefault(k, {}), j, -c)
        rows.extend(r for r in eqs.values() if r)
    return nullspace(rows, n)


def find_ribbon(H: HopfAlgebra, R: RMatrix, max_center_dim: int = 6) -> tuple[dict | None, str]:
    """Best-effort ribbon search.

    Small centers are scanned exactly: the conditions S(v) = v and
    Δ(v)(R21R12) = v⊗v are solved over the center coordinates with sympy.
    Otherwise the Drinfeld element and its inverse are tried. Returns the
    element (or None) and a short description of how it was found.
    """
    Z = center_basis(H.algebra)
    if len(Z) <= max_center_dim:
        v = _ribbon_by_center_search(H, R, Z)
        if v is not None:
            return v, f"center search (dim Z = {len(Z)})"
    u = drinfeld_element(H, R)
    cands = [("Drinfeld element u", u)]
    try:
        from .hopf import element_inverse
        cands.append(("inverse Drinfeld element", element_inverse(H.algebra, u)))
    except NotInvertible:
        pass
    for label, v in cands:
        if verify_ribbon(H, R, v).ok:
            return v, label
    return None, f"no ribbon element found (dim Z = {len(Z)})"


def _ribbon_by_center_search(H: HopfAlgebra, R: RMatrix, Z: list[dict]) -> dict | None:
    import sympy

    m = len(Z)
    c = sympy.symbols(f"c0:{m}")
    n = H.dim
    legs = (H, H)
    q = R.r21_r12()
    eqs = []
    # S(v) = v, linear
    SZ = [H.S(z) for z in Z]
    for k in range(n):
        expr = sum(sympy.Rational(SZ[a].get(k, 0) - Z[a].get(k, 0)) * c[a] for a in range(m))
        if expr != 0:
            eqs.append(expr)
    # Δ(v)Q - v⊗v, linear part minus quadratic part
    lin = [(MultiLegElement(legs, H.delta(z)) * q).coeffs for z in Z]
    keys = set()
    for L in lin:
        keys.update(L)
    quad = {}
    for a in range(m):
        for b in range(m):
            for ki, x in Z[a].items():
                for kj, y in Z[b].items():
                    quad.setdefault((ki, kj), []).append((a, b, x * y))
    keys.update(quad)
    for key in sorted(keys):
        expr = sum(sympy.Rational(lin[a].get(key, 0)) * c[a] for a in range(m))
        for a, b, w in quad.get(key, []):
            expr -= sympy.Rational(w) * c[a] * c[b]
        expr = sympy.expand(expr)
        if expr != 0:
            eqs.append(expr)
    try:
        sols = sympy.solve(eqs, c, dict=True)
    except (NotImplementedError, ValueError):
        return None
    found = []
    for s in sols:
        vals = [s.get(ci, 0) for ci in c]
        if any(not getattr(v, "is_Rational", False) for v in vals):
            continue
        from fractions import Fraction
        v: dict = {}
        for a, val in enumerate(vals):
            fv = Fraction(int(val.p), int(val.q))
            for k, x in Z[a].items():
                accumulate(v, k, fv * x)
        if v and verify_ribbon(H, R, v).ok:
            found.append(clean(v))
    if not found:
        return None
    # deterministic pick: lexicographically smallest sorted coefficient list
    found.sort(key=lambda v: sorted(v.items()))
    return found[0]
