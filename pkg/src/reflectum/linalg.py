"""Exact rational linear algebra: scalars, sparse matrices, solvers and
multi-leg tensor elements.

Scalars are plain Python ``int`` or :class:`fractions.Fraction` values.
Integral fractions are folded back to ``int`` at every boundary that
produces new scalars, so the common 0/1 structure constants stay cheap.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

Scalar = int | Fraction
Vector = dict  # sparse: {basis index: Scalar}


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


class DimensionMismatch(ValueError):
    pass


class LegMismatch(ValueError):
    pass


# ---------------------------------------------------------------- scalars


def normalize(x: Rational) -> Scalar:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"not an exact rational: {x!r}")


def parse_scalar(text) -> Scalar:
    """Parse ``"p/q"``, ``"p"`` or an int. Floats are rejected."""
    if isinstance(text, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(text, int):
        return text
    if isinstance(text, Fraction):
        return normalize(text)
    if isinstance(text, str):
        s = text.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not a rational literal: {text!r}")
        return normalize(Fraction(s))
    raise TypeError(f"scalars must be strings or ints, got {type(text).__name__}")


def format_scalar(x: Scalar) -> str:
    return str(normalize(x))


# ---------------------------------------------------------------- sparse vectors


def vec_add(x: Mapping, y: Mapping, c: Scalar = 1) -> dict:
    """Return x + c*y."""
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(x: Mapping, c: Scalar) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in x.items()}


def vec_sub(x: Mapping, y: Mapping) -> dict:
    return vec_add(x, y, -1)


def accumulate(out: dict, key, value) -> None:
    s = out.get(key, 0) + value
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def clean(x: Mapping) -> dict:
    return {k: normalize(v) for k, v in x.items() if v}


def basis_vector(i) -> dict:
    return {i: 1}


# ---------------------------------------------------------------- Matrix


class Matrix:
    """Immutable exact matrix, stored as sparse columns.

    ``columns[j]`` maps row index to the nonzero entry at (row, j), which is
    the natural layout for linear maps: column j is the image of basis
    vector j.
    """

    __slots__ = ("rows", "cols", "_columns")

    def __init__(self, rows: int, cols: int, columns: Sequence[Mapping[int, Scalar]]):
        if len(columns) != cols:
            raise DimensionMismatch(f"expected {cols} columns, got {len(columns)}")
        self.rows = rows
        self.cols = cols
        cols_clean = []
        for col in columns:
            c = clean(col)
            if c and (min(c) < 0 or max(c) >= rows):
                raise DimensionMismatch("row index out of range")
            cols_clean.append(c)
        self._columns = tuple(cols_clean)

    # constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        columns = [{} for _ in range(nc)]
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise DimensionMismatch("ragged rows")
            for j, v in enumerate(row):
                v = parse_scalar(v) if isinstance(v, str) else normalize(Fraction(v))
                if v:
                    columns[j][i] = v
        return cls(nr, nc, columns)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [{} for _ in range(cols)])

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, Scalar]]) -> "Matrix":
        columns = [{} for _ in range(cols)]
        for i, j, v in entries:
            accumulate(columns[j], i, v)
        return cls(rows, cols, columns)

    # access
    @property
    def columns(self) -> tuple:
        return self._columns

    def column(self, j: int) -> dict:
        return self._columns[j]

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self._columns[j].get(i, 0)

    @property
    def entries(self) -> list:
        """Row-major dense entry list."""
        out = [0] * (self.rows * self.cols)
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                out[i * self.cols + j] = v
        return out

    def to_rows(self) -> list[list]:
        e = self.entries
        return [e[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]

    def nonzero(self) -> Iterable[tuple[int, int, Scalar]]:
        for j, col in enumerate(self._columns):
            for i in sorted(col):
                yield i, j, col[i]

    def row_dicts(self) -> list[dict]:
        rows = [{} for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    # arithmetic
    def apply(self, x: Mapping[int, Scalar]) -> dict:
        out: dict = {}
        for j, c in x.items():
            for i, v in self._columns[j].items():
                accumulate(out, i, c * v)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        return Matrix(self.rows, other.cols, [self.apply(c) for c in other._columns])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.rows, self.cols,
                      [vec_add(a, b) for a, b in zip(self._columns, other._columns)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.rows, self.cols,
                      [vec_sub(a, b) for a, b in zip(self._columns, other._columns)])

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(self.rows, self.cols, [vec_scale(a, c) for a in self._columns])

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, self.row_dicts())

    T = property(transpose)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; the left factor is the slow index."""
        r2, c2 = other.rows, other.cols
        columns = []
        for a in self._columns:
            for b in other._columns:
                col = {}
                for i, u in a.items():
                    for k, w in b.items():
                        col[i * r2 + k] = u * w
                columns.append(col)
        return Matrix(self.rows * r2, self.cols * c2, columns)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            col == {j: 1} for j, col in enumerate(self._columns))

    def trace(self) -> Scalar:
        return normalize(sum((col.get(j, 0) for j, col in enumerate(self._columns)), 0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self._columns)))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(format_scalar(v) for v in r) for r in self.to_rows())
            return f"Matrix({self.rows}x{self.cols}: {body})"
        nnz = sum(len(c) for c in self._columns)
        return f"Matrix({self.rows}x{self.cols}, nnz={nnz})"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[i, j, format_scalar(v)] for i, j, v in self.nonzero()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Matrix":
        return cls.from_entries(int(data["rows"]), int(data["cols"]),
                                ((int(i), int(j), parse_scalar(v)) for i, j, v in data["entries"]))


WITNESS_LIMIT = 12


def diff_witness(x: Mapping, y: Mapping, limit: int = WITNESS_LIMIT) -> dict:
    """Nonzero entries of x - y (the first ``limit`` by index), keys
    stringified for reports."""
    d = sorted(vec_sub(x, y).items())
    out = {str(k): format_scalar(v) for k, v in d[:limit]}
    if len(d) > limit:
        out["more"] = f"{len(d) - limit} further entries"
    return out


# ---------------------------------------------------------------- elimination


class RowReducer:
    """Incremental Gauss-Jordan elimination over sparse rows.

    Each accepted row is normalized so its lowest-index nonzero column is a
    pivot equal to 1, and that column is cleared from every other stored row.
    The stored rows are therefore the reduced row echelon form of everything
    added so far, independent of insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    def reduce(self, row: Mapping[int, Scalar]) -> dict:
        r = dict(row)
        hits = [c for c in r if c in self.pivots]
        for c in hits:
            coef = r.get(c)
            if coef:
                for k, v in self.pivots[c].items():
                    accumulate(r, k, -coef * v)
        return r

    def add(self, row: Mapping[int, Scalar]) -> int | None:
        """Add a row; return its new pivot column, or None if it reduced to
        a combination of existing rows (possibly with a nonzero part in
        columns >= ncols, which callers treat as the augmented side)."""
        r = self.reduce(row)
        lead = [c for c in r if c < self.ncols]
        if not lead:
            self._residual = r
            return None
        p = min(lead)
        inv = Fraction(1) / r[p]
        r = {k: normalize(v * inv) for k, v in r.items()}
        for q, other in self.pivots.items():
            coef = other.get(p)
            if coef:
                for k, v in r.items():
                    accumulate(other, k, -coef * v)
        self.pivots[p] = r
        return p

    @property
    def rank(self) -> int:
        return len(self.pivots)


def solve_sparse(rows: Sequence[Mapping[int, Scalar]], rhs: Sequence[Mapping[int, Scalar]],
                 ncols: int, nrhs: int) -> list[dict]:
    """Solve A X = B with A given by sparse rows and B by sparse rows over
    ``nrhs`` right-hand-side columns. Free variables are set to 0.

    Returns X as a list of ``nrhs`` sparse columns of length ``ncols``.
    Raises :class:`NoSolution` if inconsistent.
    """
    red = RowReducer(ncols)
    for r, b in zip(rows, rhs):
        aug = dict(r)
        for k, v in b.items():
            if v:
                aug[ncols + k] = v
        if not aug:
            continue
        if red.add(aug) is None:
            if red._residual:
                raise NoSolution("inconsistent linear system")
    sol = [{} for _ in range(nrhs)]
    for p, r in red.pivots.items():
        for k, v in r.items():
            if k >= ncols and v:
                sol[k - ncols][p] = normalize(v)
    return sol


def solve_linear(A: Matrix, b: Matrix) -> Matrix:
    """Return X with A X = b; lowest-index free variables are set to 0."""
    if A.rows != b.rows:
        raise DimensionMismatch(f"A has {A.rows} rows, b has {b.rows}")
    cols = solve_sparse(A.row_dicts(), b.row_dicts(), A.cols, b.cols)
    return Matrix(A.cols, b.cols, cols)


def nullspace(rows: Sequence[Mapping[int, Scalar]], ncols: int) -> list[dict]:
    """Basis of {x : A x = 0}, one vector per free column (ascending)."""
    red = RowReducer(ncols)
    for r in rows:
        if r:
            red.add(r)
    free = [c for c in range(ncols) if c not in red.pivots]
    basis = []
    for f in free:
        v = {f: 1}
        for p, r in red.pivots.items():
            c = r.get(f)
            if c:
                v[p] = normalize(-c)
        basis.append(v)
    return basis


def rank(rows: Sequence[Mapping[int, Scalar]], ncols: int) -> int:
    red = RowReducer(ncols)
    for r in rows:
        if r:
            red.add(r)
    return red.rank


def determinant(M: Matrix) -> Scalar:
    if M.rows != M.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = M.rows
    a = [[Fraction(v) for v in row] for row in M.to_rows()]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                row_c = a[c]
                row_r = a[r]
                for k in range(c, n):
                    row_r[k] -= f * row_c[k]
    return normalize(det)


def invert_matrix(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    X = solve_linear(M, Matrix.identity(M.rows))
    if not (M @ X).is_identity():
        raise NoSolution("matrix is singular")
    return X


# ---------------------------------------------------------------- multi-leg elements


class MultiLegElement:
    """Element of a tensor product A_1 ⊗ ... ⊗ A_n of algebras.

    ``legs`` holds the algebra objects themselves; two legs are compatible
    only when they are the same object. Coefficients are sparse, keyed by
    tuples of per-leg basis indices.
    """

    __slots__ = ("legs", "coeffs")

    def __init__(self, legs: Sequence, coeffs: Mapping[tuple, Scalar]):
        self.legs = tuple(legs)
        n = len(self.legs)
        out = {}
        for k, v in coeffs.items():
            if v:
                if len(k) != n:
                    raise LegMismatch(f"index {k} does not have {n} legs")
                out[tuple(k)] = normalize(v)
        self.coeffs = out

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(a.dim for a in self.legs)

    @classmethod
    def unit(cls, legs: Sequence) -> "MultiLegElement":
        coeffs = {(): 1}
        for a in legs:
            coeffs = {k + (i,): c * u for k, c in coeffs.items() for i, u in a.unit.items()}
        return cls(legs, coeffs)

    @classmethod
    def pure(cls, legs: Sequence, vectors: Sequence[Mapping[int, Scalar]]) -> "MultiLegElement":
        """x_1 ⊗ ... ⊗ x_n from per-leg sparse vectors."""
        coeffs = {(): 1}
        for v in vectors:
            coeffs = {k + (i,): c * u for k, c in coeffs.items() for i, u in v.items()}
        return cls(legs, coeffs)

    def same_legs(self, other: "MultiLegElement") -> bool:
        return len(self.legs) == len(other.legs) and all(
            a is b for a, b in zip(self.legs, other.legs))

    def _check(self, other):
        if not self.same_legs(other):
            raise LegMismatch("leg lists differ")

    def __add__(self, other: "MultiLegElement") -> "MultiLegElement":
        self._check(other)
        return MultiLegElement(self.legs, vec_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "MultiLegElement") -> "MultiLegElement":
        self._check(other)
        return MultiLegElement(self.legs, vec_sub(self.coeffs, other.coeffs))

    def scale(self, c: Scalar) -> "MultiLegElement":
        return MultiLegElement(self.legs, vec_scale(self.coeffs, c))

    def __mul__(self, other: "MultiLegElement") -> "MultiLegElement":
        return leg_multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiLegElement):
            return NotImplemented
        return self.same_legs(other) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = " + ".join(f"{format_scalar(c)}*{k}" for k, c in sorted(self.coeffs.items())[:8])
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"MultiLegElement({terms or '0'}{more})"

    def is_zero(self) -> bool:
        return not self.coeffs

    def flat(self) -> dict:
        """Coefficients keyed by the row-major flat index."""
        dims = self.dims
        out = {}
        for k, v in self.coeffs.items():
            f = 0
            for i, d in zip(k, dims):
                f = f * d + i
            out[f] = v
        return out

    @classmethod
    def from_flat(cls, legs: Sequence, flat: Mapping[int, Scalar]) -> "MultiLegElement":
        dims = [a.dim for a in legs]
        coeffs = {}
        for f, v in flat.items():
            idx = []
            for d in reversed(dims):
                f, r = divmod(f, d)
                idx.append(r)
            coeffs[tuple(reversed(idx))] = v
        return cls(legs, coeffs)

    def to_dense(self) -> list:
        size = 1
        for d in self.dims:
            size *= d
        out = [0] * size
        for f, v in self.flat().items():
            out[f] = v
        return out

    def matrix(self) -> Matrix:
        """Two-leg element as a dim_1 x dim_2 coefficient matrix."""
        if len(self.legs) != 2:
            raise LegMismatch("coefficient matrix needs exactly two legs")
        r, c = self.dims
        return Matrix.from_entries(r, c, ((i, j, v) for (i, j), v in self.coeffs.items()))

    def swap(self, perm: Sequence[int]) -> "MultiLegElement":
        """Permute legs: output leg k is input leg perm[k]."""
        legs = [self.legs[p] for p in perm]
        return MultiLegElement(legs, {tuple(k[p] for p in perm): v for k, v in self.coeffs.items()})


def leg_multiply(x: MultiLegElement, y: MultiLegElement) -> MultiLegElement:
    """Componentwise product using each leg's algebra multiplication."""
    x._check(y)
    legs = x.legs
    n = len(legs)
    out: dict = {}
    muls = [a.mul_basis for a in legs]
    for kx, cx in x.coeffs.items():
        for ky, cy in y.coeffs.items():
            c = cx * cy
            parts = [muls[l](kx[l], ky[l]) for l in range(n)]
            if any(not p for p in parts):
                continue
            if all(len(p) == 1 for p in parts):
                key = tuple(next(iter(p)) for p in parts)
                v = c
                for p in parts:
                    v *= next(iter(p.values()))
                accumulate(out, key, v)
                continue
            for combo in itertools.product(*(p.items() for p in parts)):
                v = c
                for _, w in combo:
                    v *= w
                accumulate(out, tuple(k for k, _ in combo), v)
    return MultiLegElement(legs, out)


def embed_legs(x: MultiLegElement, positions: Sequence[int], target_legs: Sequence) -> MultiLegElement:
    """Place x at the given positions of target_legs, units elsewhere."""
    target_legs = tuple(target_legs)
    if len(positions) != len(x.legs) or len(set(positions)) != len(positions):
        raise LegMismatch("positions must be distinct and match the number of legs")
    for p, a in zip(positions, x.legs):
        if not 0 <= p < len(target_legs) or target_legs[p] is not a:
            raise LegMismatch(f"leg at position {p} is incompatible")
    others = [i for i in range(len(target_legs)) if i not in positions]
    out = {}
    unit_terms = {(): 1}
    for i in others:
        unit_terms = {k + (j,): c * u for k, c in unit_terms.items()
                      for j, u in target_legs[i].unit.items()}
    for k, c in x.coeffs.items():
        for ku, cu in unit_terms.items():
            idx = [0] * len(target_legs)
            for p, i in zip(positions, k):
                idx[p] = i
            for p, i in zip(others, ku):
                idx[p] = i
            accumulate(out, tuple(idx), c * cu)
    return MultiLegElement(target_legs, out)


class LinMapOnLeg:
    """Linear map from one leg to zero or more output legs.

    ``image(i)`` returns {tuple of output indices: coefficient}; a counit
    has no output legs and returns {(): value}.
    """

    def __init__(self, domain, out_legs: Sequence, image: Callable[[int], Mapping[tuple, Scalar]]):
        self.domain = domain
        self.out_legs = tuple(out_legs)
        self.image = image


def apply_map_to_leg(x: MultiLegElement, leg: int, f: LinMapOnLeg) -> MultiLegElement:
    if not 0 <= leg < len(x.legs):
        raise DimensionMismatch(f"no leg {leg}")
    if f.domain is not x.legs[leg] and f.domain.dim != x.legs[leg].dim:
        raise DimensionMismatch("map domain does not match leg dimension")
    legs = x.legs[:leg] + f.out_legs + x.legs[leg + 1:]
    out: dict = {}
    cache: dict = {}
    for k, c in x.coeffs.items():
        i = k[leg]
        img = cache.get(i)
        if img is None:
            img = cache[i] = f.image(i)
        pre, post = k[:leg], k[leg + 1:]
        for ko, v in img.items():
            accumulate(out, pre + tuple(ko) + post, c * v)
    return MultiLegElement(legs, out)
