"""JSON schemas, readers and writers.

Every file carries ``schema_version`` and ``kind``. Structure constants
are sparse lists whose last entry is a rational string, e.g. the product
e_i e_j = Σ c e_k is stored as rows [i, j, k, "c"].
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .comodule import ComoduleAlgebra, KMatrix, regular_comodule_algebra, trivial_comodule_algebra
from .doubles import FiniteGroup, RMatrix
from .hopf import Algebra, Coalgebra, HopfAlgebra, VerificationReport, antipode_solve
from .linalg import Matrix, MultiLegElement, accumulate, format_scalar, parse_scalar
from .modules import Module

SCHEMA_VERSION = 1

_rational = {"anyOf": [{"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"},
                       {"type": "integer"}]}
_idx = {"type": "integer", "minimum": 0}


def _rows(width: int) -> dict:
    return {"type": "array",
            "items": {"type": "array", "prefixItems": [_idx] * width + [_rational],
                      "minItems": width + 1, "maxItems": width + 1}}


_header = {"schema_version": {"const": SCHEMA_VERSION}, "name": {"type": "string"}}
_algebra_props = {
    "dim": {"type": "integer", "minimum": 1},
    "labels": {"type": "array", "items": {"type": "string"}},
    "unit": _rows(1),
    "mult": _rows(3),
}

SCHEMAS = {
    "group": {
        "type": "object",
        "required": ["schema_version", "kind", "table"],
        "properties": {**_header, "kind": {"const": "group"},
                       "table": {"type": "array", "minItems": 1,
                                 "items": {"type": "array", "items": _idx}},
                       "labels": {"type": "array", "items": {"type": "string"}}},
    },
    "hopf": {
        "type": "object",
        "required": ["schema_version", "kind", "dim", "unit", "mult", "comult", "counit"],
        "properties": {**_header, **_algebra_props, "kind": {"const": "hopf"},
                       "comult": _rows(3), "counit": _rows(1), "antipode": _rows(2),
                       "antipode_inverse": _rows(2), "r_matrix": _rows(2)},
    },
    "comodule-algebra": {
        "type": "object",
        "required": ["schema_version", "kind", "host", "dim", "unit", "mult", "coaction"],
        "properties": {**_header, **_algebra_props, "kind": {"const": "comodule-algebra"},
                       "host": {"type": ["string", "object"]}, "coaction": _rows(3)},
    },
    "kmatrix": {
        "type": "object",
        "required": ["schema_version", "kind", "comodule", "entries"],
        "properties": {**_header, "kind": {"const": "kmatrix"},
                       "comodule": {"type": ["string", "object"]}, "entries": _rows(2)},
    },
    "rmatrix": {
        "type": "object",
        "required": ["schema_version", "kind", "entries"],
        "properties": {**_header, "kind": {"const": "rmatrix"}, "entries": _rows(2)},
    },
    "module": {
        "type": "object",
        "required": ["schema_version", "kind", "algebra", "dim", "action"],
        "properties": {**_header, "kind": {"const": "module"},
                       "algebra": {"type": ["string", "object"]},
                       "dim": {"type": "integer", "minimum": 1}, "action": _rows(3)},
    },
    "doi-hopf": {
        "type": "object",
        "required": ["schema_version", "kind", "comodule", "dim", "action", "coaction"],
        "properties": {**_header, "kind": {"const": "doi-hopf"},
                       "comodule": {"type": ["string", "object"]},
                       "dim": {"type": "integer", "minimum": 1},
                       "action": _rows(3), "coaction": _rows(3)},
    },
}


class InputError(ValueError):
    """Unreadable or schema-violating input; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


# ---------------------------------------------------------------- reading


def load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read file ({exc.strerror})", str(path)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc
    if not isinstance(data, dict):
        raise InputError("top level must be an object", str(path))
    data.setdefault("_path", str(path))
    return data


def validate_schema(data: Mapping, where: str = "") -> str:
    kind = data.get("kind")
    if kind not in SCHEMAS:
        raise InputError(f"unknown kind {kind!r}; expected one of {sorted(SCHEMAS)}", where)
    payload = {k: v for k, v in data.items() if k != "_path"}
    validator = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(payload), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise InputError(err.message, f"{where}{err.json_path[1:] or '$'}")
    return kind


def _where(data: Mapping) -> str:
    return data.get("_path", "<input>") + ":"


def _resolve(ref, parent: Mapping) -> dict:
    """Nested object or a path relative to the parent file."""
    if isinstance(ref, dict):
        ref = dict(ref)
        ref.setdefault("_path", parent.get("_path", "<input>"))
        return ref
    base = Path(parent.get("_path", ".")).parent
    return load_json(base / ref)


def parse_rational(c, where: str = ""):
    try:
        return parse_scalar(c)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {c!r} ({exc})", where) from exc


def _check_index(i: int, bound: int, where: str):
    if i >= bound:
        raise InputError(f"index {i} out of range (dim {bound})", where)


def _vector(rows, dim: int, where: str) -> dict:
    out: dict = {}
    for n, (i, c) in enumerate(rows):
        _check_index(i, dim, f"{where}[{n}]")
        accumulate(out, i, parse_rational(c, f"{where}[{n}]"))
    return out


def _algebra(data: Mapping, name: str = "") -> Algebra:
    w = _where(data)
    dim = data["dim"]
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for n, (i, j, k, c) in enumerate(data["mult"]):
        for x in (i, j, k):
            _check_index(x, dim, f"{w}mult[{n}]")
        accumulate(table[i][j], k, parse_rational(c, f"{w}mult[{n}]"))
    labels = data.get("labels")
    if labels is not None and len(labels) != dim:
        raise InputError("label count does not match dim", f"{w}labels")
    return Algebra(dim, table, _vector(data["unit"], dim, f"{w}unit"), labels,
                   name=name or data.get("name", ""))


def _matrix(rows, nrows: int, ncols: int, where: str) -> Matrix:
    entries = []
    for n, (i, j, c) in enumerate(rows):
        _check_index(i, nrows, f"{where}[{n}]")
        _check_index(j, ncols, f"{where}[{n}]")
        entries.append((i, j, parse_rational(c, f"{where}[{n}]")))
    return Matrix.from_entries(nrows, ncols, entries)


def read_group(data: Mapping) -> FiniteGroup:
    from .doubles import InvalidGroup
    try:
        return FiniteGroup.from_table(data["table"], data.get("labels"), data.get("name", ""))
    except (InvalidGroup, ValueError, IndexError) as exc:
        raise InputError(str(exc), f"{_where(data)}table") from exc


def read_hopf(data: Mapping, solve_antipode: bool = True) -> HopfAlgebra:
    """Hopf algebra; ``r_matrix`` entries, when present, become ``H.r_matrix``.
    A missing antipode is solved for (NoAntipode propagates)."""
    w = _where(data)
    name = data.get("name", "")
    alg = _algebra(data, name)
    dim = alg.dim
    comult = [dict() for _ in range(dim)]
    for n, (k, i, j, c) in enumerate(data["comult"]):
        for x in (k, i, j):
            _check_index(x, dim, f"{w}comult[{n}]")
        accumulate(comult[k], (i, j), parse_rational(c, f"{w}comult[{n}]"))
    coalg = Coalgebra(dim, comult, _vector(data["counit"], dim, f"{w}counit"))
    if "antipode" in data:
        S = _matrix(data["antipode"], dim, dim, f"{w}antipode")
    elif solve_antipode:
        S = antipode_solve(alg, coalg)
    else:
        S = Matrix.identity(dim)
    Sinv = _matrix(data["antipode_inverse"], dim, dim, f"{w}antipode_inverse") \
        if "antipode_inverse" in data else None
    H = HopfAlgebra(alg, coalg, S, Sinv, name=name)
    if "r_matrix" in data:
        R = RMatrix.from_coeffs(H, _matrix(data["r_matrix"], dim, dim, f"{w}r_matrix"))
        H.r_matrix = R
    return H


def read_comodule(data: Mapping, host: HopfAlgebra | None = None) -> ComoduleAlgebra:
    w = _where(data)
    if host is None:
        host = read_hopf(validated(_resolve(data["host"], data), "hopf"))
    alg = _algebra(data)
    coaction = [dict() for _ in range(alg.dim)]
    for n, (a, h, b, c) in enumerate(data["coaction"]):
        _check_index(a, alg.dim, f"{w}coaction[{n}]")
        _check_index(h, host.dim, f"{w}coaction[{n}]")
        _check_index(b, alg.dim, f"{w}coaction[{n}]")
        accumulate(coaction[a], (h, b), parse_rational(c, f"{w}coaction[{n}]"))
    return ComoduleAlgebra(host, alg, coaction, data.get("name", ""))


def read_kmatrix(data: Mapping, comod: ComoduleAlgebra | None = None) -> KMatrix:
    if comod is None:
        comod = read_comodule(validated(_resolve(data["comodule"], data), "comodule-algebra"))
    M = _matrix(data["entries"], comod.host.dim, comod.algebra.dim, f"{_where(data)}entries")
    return KMatrix.from_coeffs(comod, M)


def read_action(rows, nalg: int, dim: int, where: str) -> list:
    cols = [[{} for _ in range(dim)] for _ in range(nalg)]
    for n, (i, m, mp, c) in enumerate(rows):
        _check_index(i, nalg, f"{where}[{n}]")
        _check_index(m, dim, f"{where}[{n}]")
        _check_index(mp, dim, f"{where}[{n}]")
        accumulate(cols[i][m], mp, parse_rational(c, f"{where}[{n}]"))
    return [Matrix(dim, dim, c) for c in cols]


def validated(data: Mapping, kind: str | None = None) -> dict:
    got = validate_schema(data, _where(data))
    if kind is not None and got != kind:
        raise InputError(f"expected a {kind} file, got {got}", _where(data))
    return data


def comodule_keyword(word: str, H: HopfAlgebra) -> ComoduleAlgebra | None:
    if word == "trivial":
        return trivial_comodule_algebra(H)
    if word == "regular":
        return regular_comodule_algebra(H)
    return None


# ---------------------------------------------------------------- writing


def _s(x) -> str:
    return format_scalar(x)


def _algebra_json(A) -> dict:
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in sorted(A.mul_basis(i, j).items()):
                mult.append([i, j, k, _s(c)])
    return {"dim": A.dim, "labels": list(A.labels),
            "unit": [[i, _s(c)] for i, c in sorted(A.unit.items())], "mult": mult}


def hopf_to_json(H: HopfAlgebra, R: RMatrix | None = None) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "kind": "hopf", "name": H.name}
    out.update(_algebra_json(H.algebra))
    out["comult"] = [[k, i, j, _s(c)] for k in range(H.dim) for (i, j), c in sorted(H.comult[k].items())]
    out["counit"] = [[i, _s(c)] for i, c in sorted(H.counit.items())]
    out["antipode"] = [[i, j, _s(v)] for i, j, v in H.antipode.nonzero()]
    if H.antipode_inverse is not None:
        out["antipode_inverse"] = [[i, j, _s(v)] for i, j, v in H.antipode_inverse.nonzero()]
    R = R or H.r_matrix
    if R is not None:
        out["r_matrix"] = [[i, j, _s(c)] for (i, j), c in sorted(R.element.coeffs.items())]
    return out


def rmatrix_to_json(R: RMatrix) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "rmatrix", "name": f"R of {R.host.name}",
            "entries": [[i, j, _s(c)] for (i, j), c in sorted(R.element.coeffs.items())]}


def comodule_to_json(CA: ComoduleAlgebra, host_ref: Any) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "kind": "comodule-algebra", "name": CA.name,
           "host": host_ref}
    out.update(_algebra_json(CA.algebra))
    out["coaction"] = [[a, h, b, _s(c)] for a in range(CA.algebra.dim)
                       for (h, b), c in sorted(CA.coaction[a].items())]
    return out


def coaction_to_json(CA: ComoduleAlgebra, host_ref: Any, name: str = "") -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "coaction", "name": name or CA.name,
            "host": host_ref, "dim": CA.algebra.dim, "host_dim": CA.host.dim,
            "coaction": [[a, h, b, _s(c)] for a in range(CA.algebra.dim)
                         for (h, b), c in sorted(CA.coaction[a].items())]}


def kmatrix_to_json(K: KMatrix, comod_ref: Any, name: str = "") -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "kmatrix", "name": name,
            "comodule": comod_ref, "rows": K.comod.host.dim, "cols": K.comod.algebra.dim,
            "entries": [[i, j, _s(c)] for (i, j), c in sorted(K.element.coeffs.items())]}


def module_to_json(M: Module, algebra_ref: Any) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "module", "name": M.name,
            "algebra": algebra_ref, "dim": M.dim,
            "action": [[i, m, mp, _s(v)] for i, a in enumerate(M.action) for mp, m, v in a.nonzero()]}


def matrix_bundle(generators: Mapping[str, Matrix], relations: VerificationReport,
                  name: str = "") -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "operators", "name": name,
            "manifest": {"generators": list(generators),
                         "relations": [{"name": c.name, "status": c.status, "tag": c.tag,
                                        **({"informational": True} if c.informational else {})}
                                       for c in relations.checks]},
            "operators": {k: m.to_json() for k, m in generators.items()}}


def report_to_json(reports, name: str = "") -> dict:
    reports = list(reports)
    return {"schema_version": SCHEMA_VERSION, "kind": "report", "name": name,
            "ok": all(r.ok for r in reports), "sections": [r.to_json() for r in reports]}


def dumps(data: Mapping) -> str:
    """Deterministic serialization (no private keys, fixed layout)."""
    clean = {k: v for k, v in data.items() if not k.startswith("_")}
    return json.dumps(clean, indent=1, ensure_ascii=False) + "\n"


def write_json(path, data: Mapping) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding="utf-8")
    return path


def group_to_json(G: FiniteGroup) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "group", "name": G.name,
            "labels": list(G.element_labels), "table": [list(r) for r in G.mult_table]}


def element_from_rows(legs, rows) -> MultiLegElement:
    return MultiLegElement(legs, {(i, j): parse_scalar(c) for i, j, c in rows})
