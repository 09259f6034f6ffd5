"""Finite-dimensional modules over structure-constant algebras."""

from __future__ import annotations

from typing import Mapping, Sequence

from .hopf import VerificationReport, first_failure
from .linalg import Matrix, accumulate


class ModuleMismatch(ValueError):
    pass


class Module:
    """Left module: ``action[i]`` is the matrix of basis element e_i."""

    def __init__(self, algebra, dim: int, action: Sequence[Matrix], name: str = ""):
        if len(action) != algebra.dim:
            raise ModuleMismatch(f"need {algebra.dim} action matrices, got {len(action)}")
        for m in action:
            if m.shape != (dim, dim):
                raise ModuleMismatch(f"action matrix has shape {m.shape}, expected {(dim, dim)}")
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        self.name = name

    def act_basis(self, i: int) -> Matrix:
        return self.action[i]

    def act(self, x: Mapping) -> Matrix:
        cols = [{} for _ in range(self.dim)]
        for i, c in x.items():
            for j, col in enumerate(self.action[i].columns):
                for r, v in col.items():
                    accumulate(cols[j], r, c * v)
        return Matrix(self.dim, self.dim, cols)

    def apply(self, x: Mapping, m: Mapping) -> dict:
        out: dict = {}
        for i, c in x.items():
            for k, v in self.action[i].apply(m).items():
                accumulate(out, k, c * v)
        return out

    def check(self, report: VerificationReport | None = None,
              pairs=None) -> VerificationReport:
        report = report or VerificationReport(f"module axioms: {self.name}")
        A = self.algebra
        one = self.act(A.unit)
        report.add("unit acts as identity", one.is_identity(), "module",
                   {"index": [], "discrepancy": {"act(1)": repr(one)}})
        if pairs is None:
            pairs = ((i, j) for i in range(A.dim) for j in range(A.dim))

        def cmp(ij):
            i, j = ij
            lhs = self.act(A.mul_basis(i, j))
            rhs = self.action[i] @ self.action[j]
            return _mat_dict(lhs), _mat_dict(rhs)

        w = first_failure(pairs, cmp)
        report.add("act(ab) = act(a)act(b)", w is None, "module", w)
        return report

    def to_json(self) -> dict:
        return {"dim": self.dim, "action": [m.to_json() for m in self.action]}

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim})"


def _mat_dict(M: Matrix) -> dict:
    return {(i, j): v for i, j, v in M.nonzero()}


def regular_module(A, name: str = "") -> Module:
    return Module(A, A.dim, [A.left_matrix({i: 1}) for i in range(A.dim)],
                  name or f"regular {getattr(A, 'name', '')}")


def trivial_module(H) -> Module:
    """The one-dimensional module given by the counit."""
    return Module(H, 1, [Matrix(1, 1, [{0: H.counit.get(i, 0)}]) for i in range(H.dim)],
                  f"trivial {H.name}")


def tensor_module(H, X: Module, Y: Module) -> Module:
    """X⊗Y with h·(x⊗y) = h1·x ⊗ h2·y."""
    if X.algebra is not H or Y.algebra is not H:
        raise ModuleMismatch("both factors must be modules over the same Hopf algebra")
    n = X.dim * Y.dim
    action = []
    for i in range(H.dim):
        total = Matrix.zeros(n, n)
        for (a, b), c in sorted(H.comult[i].items()):
            total = total + X.act_basis(a).kron(Y.act_basis(b)).scale(c)
        action.append(total)
    return Module(H, n, action, f"{X.name}⊗{Y.name}")


def twisted_module(M: Module, P: Matrix, name: str = "") -> Module:
    """Same module transported along an invertible base change P."""
    from .linalg import invert_matrix
    Pinv = invert_matrix(P)
    return Module(M.algebra, M.dim, [Pinv @ a @ P for a in M.action], name or M.name)


def identity_matrix(n: int) -> Matrix:
    return Matrix.identity(n)
