"""Structure-constant algebras, coalgebras and Hopf algebras, with axiom
checkers and generic derived constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import (
    LinMapOnLeg,
    Matrix,
    MultiLegElement,
    NoSolution,
    Scalar,
    accumulate,
    clean,
    diff_witness,
    format_scalar,
    normalize,
    rank,
    solve_sparse,
    vec_scale,
)


class NoAntipode(ArithmeticError):
    pass


class NotInvertible(ArithmeticError):
    pass


class VerificationFailure(RuntimeError):
    def __init__(self, message: str, report: "VerificationReport | None" = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------- reports

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass
class Check:
    name: str
    status: str
    tag: str = ""
    witness: dict = field(default_factory=dict)
    detail: str = ""
    informational: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "tag": self.tag, "status": self.status,
               "witness": self.witness}
        if self.detail:
            out["detail"] = self.detail
        if self.informational:
            out["informational"] = True
        return out


@dataclass
class VerificationReport:
    title: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, tag: str = "", witness: dict | None = None,
            detail: str = "", informational: bool = False) -> Check:
        c = Check(name, PASS if ok else FAIL, tag, {} if ok else (witness or {}),
                  detail, informational)
        self.checks.append(c)
        return c

    def skip(self, name: str, tag: str = "", reason: str = "") -> Check:
        c = Check(name, SKIPPED, tag, {}, reason)
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.tag, c.witness,
                                     c.detail, c.informational))
        return self

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks if not c.informational)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL and not c.informational]

    def status_of(self, name: str) -> str | None:
        for c in self.checks:
            if c.name == name:
                return c.status
        return None

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"title": self.title, "ok": self.ok,
                "checks": [c.to_json() for c in self.checks]}

    def render(self) -> str:
        lines = [self.title] if self.title else []
        w = max((len(c.name) for c in self.checks), default=4)
        for c in self.checks:
            tag = f"[{c.tag}]" if c.tag else ""
            note = " (informational)" if c.informational else ""
            lines.append(f"  {c.status:<7} {c.name:<{w}} {tag}{note}")
            if c.detail and c.status != PASS:
                lines.append(f"          {c.detail}")
            if c.witness:
                lines.append(f"          witness: {c.witness}")
        lines.append(f"  => {'ALL PASS' if self.ok else 'FAILURES'}")
        return "\n".join(lines)


def first_failure(items: Iterable, compare: Callable) -> dict | None:
    """Run ``compare(item) -> (lhs, rhs)`` over items; return a witness for
    the first item where they differ."""
    for item in items:
        lhs, rhs = compare(item)
        if lhs != rhs:
            return {"index": list(item) if isinstance(item, tuple) else [item],
                    "discrepancy": diff_witness(lhs, rhs)}
    return None


# ---------------------------------------------------------------- algebra


class Algebra:
    """Finite-dimensional unital algebra given by structure constants.

    ``mult`` is a table with ``mult[i][j]`` a sparse dict {k: c}; a callable
    ``mult_fn(i, j)`` may be given instead, in which case products are
    computed on demand and memoized.
    """

    def __init__(self, dim: int, mult=None, unit: Mapping[int, Scalar] | None = None,
                 labels: Sequence[str] | None = None, mult_fn: Callable | None = None,
                 name: str = ""):
        self.dim = dim
        self.name = name
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("label count does not match dim")
        if mult is not None:
            if len(mult) != dim or any(len(r) != dim for r in mult):
                raise ValueError("mult table has wrong shape")
            self._table = [[clean(c) for c in row] for row in mult]
            self._fn = None
        elif mult_fn is not None:
            self._table = None
            self._fn = mult_fn
            self._cache: dict = {}
        else:
            raise ValueError("need mult or mult_fn")
        self.unit = clean(unit if unit is not None else {0: 1})

    def mul_basis(self, i: int, j: int) -> dict:
        if self._table is not None:
            return self._table[i][j]
        key = (i, j)
        r = self._cache.get(key)
        if r is None:
            r = self._cache[key] = clean(self._fn(i, j))
        return r

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, c in self.mul_basis(i, j).items():
                    accumulate(out, k, ab * c)
        return out

    def mul_many(self, *xs: Mapping) -> dict:
        out = dict(self.unit)
        for x in xs:
            out = self.mul(out, x)
        return out

    @property
    def one(self) -> dict:
        return dict(self.unit)

    @property
    def lazy(self) -> bool:
        return self._table is None

    def table(self) -> list:
        return [[self.mul_basis(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def left_matrix(self, x: Mapping) -> Matrix:
        return Matrix(self.dim, self.dim, [self.mul(x, {j: 1}) for j in range(self.dim)])

    def right_matrix(self, x: Mapping) -> Matrix:
        return Matrix(self.dim, self.dim, [self.mul({j: 1}, x) for j in range(self.dim)])

    def is_commutative(self) -> bool:
        return all(self.mul_basis(i, j) == self.mul_basis(j, i)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def mult_entries(self) -> list:
        return [(i, j, k, c) for i in range(self.dim) for j in range(self.dim)
                for k, c in sorted(self.mul_basis(i, j).items())]

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim})"


def check_algebra(A: Algebra, report: VerificationReport | None = None,
                  triples: Iterable | None = None) -> VerificationReport:
    """Associativity and unit laws. ``triples`` restricts the associativity
    check; by default every basis triple is examined."""
    report = report or VerificationReport(f"algebra {A.name}")
    n = A.dim
    if triples is None:
        triples = itertools.product(range(n), repeat=3)
    w = first_failure(
        triples,
        lambda t: (A.mul(A.mul_basis(t[0], t[1]), {t[2]: 1}),
                   A.mul({t[0]: 1}, A.mul_basis(t[1], t[2]))))
    report.add("associativity", w is None, "assoc", w)
    w = first_failure(range(n), lambda i: (A.mul(A.unit, {i: 1}), {i: 1}))
    report.add("left unit", w is None, "unit", w)
    w = first_failure(range(n), lambda i: (A.mul({i: 1}, A.unit), {i: 1}))
    report.add("right unit", w is None, "unit", w)
    return report


# ---------------------------------------------------------------- coalgebra


class Coalgebra:
    """``comult[k]`` is a dict {(i, j): c}: Δ(e_k) = Σ c e_i⊗e_j."""

    def __init__(self, dim: int, comult: Sequence[Mapping], counit: Mapping[int, Scalar] | Sequence):
        if len(comult) != dim:
            raise ValueError("comult has wrong length")
        self.dim = dim
        self.comult = [clean(c) for c in comult]
        if isinstance(counit, Mapping):
            self.counit = clean(counit)
        else:
            if len(counit) != dim:
                raise ValueError("counit has wrong length")
            self.counit = clean(dict(enumerate(counit)))

    def delta(self, x: Mapping) -> dict:
        out: dict = {}
        for k, a in x.items():
            for ij, c in self.comult[k].items():
                accumulate(out, ij, a * c)
        return out

    def eps(self, x: Mapping) -> Scalar:
        return normalize(sum((a * self.counit.get(k, 0) for k, a in x.items()), 0))


def _delta_left(C: Coalgebra, pairs: Mapping) -> dict:
    """(Δ⊗Id) on a dict of pairs."""
    out: dict = {}
    for (i, j), a in pairs.items():
        for (p, q), c in C.comult[i].items():
            accumulate(out, (p, q, j), a * c)
    return out


def _delta_right(C: Coalgebra, pairs: Mapping) -> dict:
    out: dict = {}
    for (i, j), a in pairs.items():
        for (p, q), c in C.comult[j].items():
            accumulate(out, (i, p, q), a * c)
    return out


def check_coalgebra(C: Coalgebra, report: VerificationReport | None = None,
                    name: str = "") -> VerificationReport:
    report = report or VerificationReport(f"coalgebra {name}")
    n = C.dim
    w = first_failure(range(n), lambda k: (_delta_left(C, C.comult[k]),
                                           _delta_right(C, C.comult[k])))
    report.add("coassociativity", w is None, "coassoc", w)

    def counit_left(k):
        out = {}
        for (i, j), c in C.comult[k].items():
            accumulate(out, j, c * C.counit.get(i, 0))
        return out, {k: 1}

    def counit_right(k):
        out = {}
        for (i, j), c in C.comult[k].items():
            accumulate(out, i, c * C.counit.get(j, 0))
        return out, {k: 1}

    w = first_failure(range(n), counit_left)
    report.add("left counit", w is None, "counit", w)
    w = first_failure(range(n), counit_right)
    report.add("right counit", w is None, "counit", w)
    return report


# ---------------------------------------------------------------- Hopf algebra


class HopfAlgebra:
    """Hopf algebra: an Algebra and a Coalgebra on the same basis plus an
    antipode. Instances also serve as legs of MultiLegElement."""

    def __init__(self, algebra: Algebra, coalgebra: Coalgebra, antipode: Matrix,
                 antipode_inverse: Matrix | None = None, name: str = ""):
        if algebra.dim != coalgebra.dim or antipode.shape != (algebra.dim, algebra.dim):
            raise ValueError("inconsistent dimensions in Hopf data")
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.antipode = antipode
        if antipode_inverse is None:
            try:
                from .linalg import invert_matrix
                antipode_inverse = invert_matrix(antipode)
            except NoSolution:
                antipode_inverse = None  # reported by check_antipode
        self.antipode_inverse = antipode_inverse
        self.name = name or algebra.name
        # populated by constructions that know a quasitriangular structure
        self.r_matrix = None

    # algebra side, so a HopfAlgebra can be used as a leg
    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def unit(self) -> dict:
        return self.algebra.unit

    @property
    def labels(self) -> list:
        return self.algebra.labels

    def mul_basis(self, i, j):
        return self.algebra.mul_basis(i, j)

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def mul_many(self, *xs):
        return self.algebra.mul_many(*xs)

    @property
    def one(self):
        return self.algebra.one

    def left_matrix(self, x):
        return self.algebra.left_matrix(x)

    # coalgebra side
    @property
    def comult(self):
        return self.coalgebra.comult

    @property
    def counit(self):
        return self.coalgebra.counit

    def delta(self, x):
        return self.coalgebra.delta(x)

    def delta2(self, x) -> dict:
        """(Δ⊗Id)Δ as a dict of index triples."""
        return _delta_left(self.coalgebra, self.coalgebra.delta(x))

    def eps(self, x):
        return self.coalgebra.eps(x)

    def S(self, x):
        return self.antipode.apply(x)

    def Sinv(self, x):
        return self.antipode_inverse.apply(x)

    # leg maps
    def delta_map(self) -> LinMapOnLeg:
        return LinMapOnLeg(self, (self, self), lambda k: self.comult[k])

    def eps_map(self) -> LinMapOnLeg:
        return LinMapOnLeg(self, (), lambda k: {(): self.counit.get(k, 0)}
                           if self.counit.get(k, 0) else {})

    def S_map(self) -> LinMapOnLeg:
        return LinMapOnLeg(self, (self,), lambda k: {(i,): c for i, c in self.antipode.column(k).items()})

    def Sinv_map(self) -> LinMapOnLeg:
        return LinMapOnLeg(self, (self,),
                           lambda k: {(i,): c for i, c in self.antipode_inverse.column(k).items()})

    def __repr__(self):
        return f"HopfAlgebra({self.name or '?'}, dim={self.dim})"


def two_leg(H, K, pairs: Mapping) -> MultiLegElement:
    return MultiLegElement((H, K), pairs)


def check_bialgebra(H: HopfAlgebra, report: VerificationReport) -> VerificationReport:
    n = H.dim
    A, C = H.algebra, H.coalgebra
    legs = (H, H)

    def delta_mult(ij):
        i, j = ij
        lhs = C.delta(A.mul_basis(i, j))
        rhs = (MultiLegElement(legs, C.comult[i]) * MultiLegElement(legs, C.comult[j])).coeffs
        return lhs, rhs

    w = first_failure(itertools.product(range(n), repeat=2), delta_mult)
    report.add("comultiplication is multiplicative", w is None, "bialg", w)
    w = first_failure(itertools.product(range(n), repeat=2),
                      lambda ij: ({0: C.eps(A.mul_basis(*ij))},
                                  {0: C.counit.get(ij[0], 0) * C.counit.get(ij[1], 0)}))
    report.add("counit is multiplicative", w is None, "bialg", w)
    unit2 = MultiLegElement.unit(legs).coeffs
    d1 = C.delta(A.unit)
    report.add("comultiplication preserves unit", d1 == unit2, "bialg",
               {"index": [], "discrepancy": diff_witness(d1, unit2)})
    e1 = C.eps(A.unit)
    report.add("counit preserves unit", e1 == 1, "bialg",
               {"index": [], "discrepancy": {"0": format_scalar(e1 - 1)}})
    return report


def check_antipode(H: HopfAlgebra, report: VerificationReport) -> VerificationReport:
    n = H.dim

    def side(k, left):
        out: dict = {}
        for (i, j), c in H.comult[k].items():
            if left:
                term = H.mul(H.antipode.column(i), {j: 1})
            else:
                term = H.mul({i: 1}, H.antipode.column(j))
            for q, v in term.items():
                accumulate(out, q, c * v)
        return out, vec_scale(H.unit, H.counit.get(k, 0))

    w = first_failure(range(n), lambda k: side(k, True))
    report.add("antipode axiom S(x1)x2 = eps(x)1", w is None, "antipode", w)
    w = first_failure(range(n), lambda k: side(k, False))
    report.add("antipode axiom x1S(x2) = eps(x)1", w is None, "antipode", w)
    if H.antipode_inverse is None:
        report.add("antipode inverse", False, "antipode",
                   {"index": [], "discrepancy": {"S": "singular"}})
        return report
    prod = H.antipode @ H.antipode_inverse
    ok = prod.is_identity() and (H.antipode_inverse @ H.antipode).is_identity()
    report.add("antipode inverse", ok, "antipode",
               None if ok else {"index": [], "discrepancy": {"S*Sinv": repr(prod)}})
    return report


def check_hopf(H: HopfAlgebra, name: str | None = None) -> VerificationReport:
    report = VerificationReport(f"Hopf axioms: {name or H.name}")
    check_algebra(H.algebra, report)
    check_coalgebra(H.coalgebra, report)
    check_bialgebra(H, report)
    check_antipode(H, report)
    return report


# ---------------------------------------------------------------- antipode solving


def antipode_solve(algebra: Algebra, coalgebra: Coalgebra) -> Matrix:
    """Convolution inverse of the identity map, from both antipode axioms.

    Unknown S[q, a] is the coefficient of e_q in S(e_a), flattened as
    a*n + q. Raises NoAntipode if the linear system is inconsistent.
    """
    n = algebra.dim
    rows, rhs = [], []
    for k in range(n):
        target = vec_scale(algebra.unit, coalgebra.counit.get(k, 0))
        for left in (True, False):
            eqs: dict = {}  # output coordinate -> {unknown: coef}
            for (i, j), c in coalgebra.comult[k].items():
                # left: S(e_i) e_j ; right: e_i S(e_j)
                a = i if left else j
                for q in range(n):
                    prod = algebra.mul_basis(q, j) if left else algebra.mul_basis(i, q)
                    for out, v in prod.items():
                        row = eqs.setdefault(out, {})
                        accumulate(row, a * n + q, c * v)
            for out in sorted(set(eqs) | set(target)):
                rows.append(eqs.get(out, {}))
                t = target.get(out, 0)
                rhs.append({0: t} if t else {})
    try:
        (sol,) = solve_sparse(rows, rhs, n * n, 1)
    except NoSolution as exc:
        raise NoAntipode("no antipode: the antipode equations are inconsistent") from exc
    columns = [{} for _ in range(n)]
    for idx, v in sol.items():
        a, q = divmod(idx, n)
        columns[a][q] = v
    return Matrix(n, n, columns)


# ---------------------------------------------------------------- derived structures


def dual_hopf(H: HopfAlgebra, name: str | None = None) -> HopfAlgebra:
    """H* on the index-matched dual basis."""
    n = H.dim
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for (d, e), c in H.comult[k].items():
            mult[d][e][k] = c
    comult = [{} for _ in range(n)]
    for d in range(n):
        for e in range(n):
            for k, c in H.mul_basis(d, e).items():
                comult[k][(d, e)] = c
    alg = Algebra(n, mult, dict(H.counit), [f"ξ{l}" for l in H.labels],
                  name=name or f"({H.name})*")
    coal = Coalgebra(n, comult, dict(H.unit))
    return HopfAlgebra(alg, coal, H.antipode.transpose(), H.antipode_inverse.transpose(),
                       name=alg.name)


def opposite(H: HopfAlgebra) -> HopfAlgebra:
    n = H.dim
    mult = [[H.mul_basis(j, i) for j in range(n)] for i in range(n)]
    alg = Algebra(n, mult, H.unit, H.labels, name=f"({H.name})^op")
    return HopfAlgebra(alg, H.coalgebra, H.antipode_inverse, H.antipode, name=alg.name)


def coopposite(H: HopfAlgebra) -> HopfAlgebra:
    comult = [{(j, i): c for (i, j), c in row.items()} for row in H.comult]
    coal = Coalgebra(H.dim, comult, H.counit)
    return HopfAlgebra(H.algebra, coal, H.antipode_inverse, H.antipode,
                       name=f"({H.name})^cop")


class TensorAlgebra(Algebra):
    """A_1 ⊗ ... ⊗ A_n as a single algebra on row-major flat indices."""

    def __init__(self, legs: Sequence):
        self.legs = tuple(legs)
        dims = [a.dim for a in self.legs]
        size = 1
        for d in dims:
            size *= d
        unit = MultiLegElement.unit(self.legs).flat()
        super().__init__(size, mult_fn=self._mul, unit=unit,
                         labels=[str(i) for i in range(size)],
                         name="⊗".join(getattr(a, "name", "?") for a in self.legs))

    def split(self, f: int) -> tuple:
        idx = []
        for a in reversed(self.legs):
            f, r = divmod(f, a.dim)
            idx.append(r)
        return tuple(reversed(idx))

    def _mul(self, i, j):
        legs = self.legs
        x = MultiLegElement(legs, {self.split(i): 1})
        y = MultiLegElement(legs, {self.split(j): 1})
        return (x * y).flat()


def element_inverse(A: Algebra, x: Mapping, search_basis: Sequence[Mapping] | None = None) -> dict:
    """Two-sided inverse of x in A.

    ``search_basis`` optionally restricts the unknown to the span of the given
    vectors (for instance a subalgebra known to contain the inverse); the
    result is checked against both one-sided equations in A either way.
    """
    x = clean(x)
    if not x:
        raise NotInvertible("zero is not invertible")
    basis = list(search_basis) if search_basis is not None else [{j: 1} for j in range(A.dim)]
    m = len(basis)
    left_cols = [A.mul(x, b) for b in basis]   # x * b
    right_cols = [A.mul(b, x) for b in basis]  # b * x
    for cols in (left_cols, right_cols):
        rows: dict = {}
        for c, col in enumerate(cols):
            for r, v in col.items():
                rows.setdefault(r, {})[c] = v
        keys = sorted(set(rows) | set(A.unit))
        try:
            (sol,) = solve_sparse([rows.get(r, {}) for r in keys],
                                  [{0: A.unit[r]} if r in A.unit else {} for r in keys], m, 1)
        except NoSolution as exc:
            raise NotInvertible("element is not invertible") from exc
        y: dict = {}
        for c, v in sol.items():
            for k, w in basis[c].items():
                accumulate(y, k, v * w)
        if A.mul(x, y) == A.unit and A.mul(y, x) == A.unit:
            return y
    raise NotInvertible("one-sided inverse is not two-sided")


def multileg_inverse(x: MultiLegElement, restrict: bool = True) -> MultiLegElement:
    """Inverse of a multi-leg element; the search is restricted to the
    tensor product of the subalgebras generated by the leg slices of x."""
    alg = TensorAlgebra(x.legs)
    flat = x.flat()
    basis = None
    if restrict:
        per_leg = []
        for l, a in enumerate(x.legs):
            slices: dict = {}
            for k, c in x.coeffs.items():
                rest = k[:l] + k[l + 1:]
                slices.setdefault(rest, {})[k[l]] = c
            per_leg.append(generated_subalgebra(a, list(slices.values())))
        if all(len(b) == a.dim for b, a in zip(per_leg, x.legs)):
            basis = None
        else:
            basis = []
            for combo in itertools.product(*per_leg):
                basis.append(MultiLegElement.pure(x.legs, combo).flat())
    y = element_inverse(alg, flat, basis)
    return MultiLegElement.from_flat(x.legs, y)


def generated_subalgebra(A, vectors: Sequence[Mapping]) -> list[dict]:
    """Basis (in reduced echelon form) of the unital subalgebra of A
    generated by the given vectors."""
    from .linalg import RowReducer
    red = RowReducer(A.dim)
    frontier = []
    for v in [A.unit] + list(vectors):
        if red.add(v) is not None:
            frontier.append(dict(v))
    gens = [dict(v) for v in vectors if v]
    while frontier:
        new = []
        for u in frontier:
            for g in gens:
                p = A.mul(u, g)
                if p and red.add(p) is not None:
                    new.append(p)
        frontier = new
        if red.rank == A.dim:
            break
    return [dict(r) for _, r in sorted(red.pivots.items())]


def check_semisimple(A: Algebra) -> bool:
    """Nondegeneracy of the trace form tr(L_{e_i e_j}) (characteristic 0)."""
    n = A.dim
    tr = [normalize(sum((A.mul_basis(k, m).get(m, 0) for m in range(n)), 0)) for k in range(n)]
    rows = []
    for i in range(n):
        row = {}
        for j in range(n):
            v = sum((c * tr[k] for k, c in A.mul_basis(i, j).items()), 0)
            if v:
                row[j] = normalize(v)
        rows.append(row)
    return rank(rows, n) == n


def truncated_polynomial_algebra(n: int = 2) -> Algebra:
    """k[x]/(x^n) on the basis 1, x, ..., x^(n-1)."""
    mult = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    return Algebra(n, mult, {0: 1}, ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)],
                   name=f"k[x]/(x^{n})")


def matrix_monoid_bialgebra() -> tuple[Algebra, Coalgebra]:
    """Monoid algebra of 2x2 matrices over F_2 under multiplication.

    Every matrix is group-like, so this is a bialgebra; singular matrices
    have no inverse, so it has no antipode. The identity matrix is e0.
    """
    mats = list(itertools.product((0, 1), repeat=4))
    mats.remove((1, 0, 0, 1))
    mats.insert(0, (1, 0, 0, 1))
    index = {m: i for i, m in enumerate(mats)}

    def mm(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 2, (a * f + b * h) % 2, (c * e + d * g) % 2, (c * f + d * h) % 2)

    n = len(mats)
    mult = [[{index[mm(x, y)]: 1} for y in mats] for x in mats]
    labels = ["[" + "".join(map(str, m[:2])) + "|" + "".join(map(str, m[2:])) + "]" for m in mats]
    alg = Algebra(n, mult, {0: 1}, labels, name="k[M2(F2)]")
    coal = Coalgebra(n, [{(i, i): 1} for i in range(n)], [1] * n)
    return alg, coal
