"""Command-line front end: validate, build, check, export."""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import io as rio
from .comodule import (
    ComoduleAlgebra,
    KMatrix,
    check_comodule_algebra,
    check_k_equivalents,
    check_kmatrix,
    check_reflection_equation,
    ktilde,
    trivial_comodule_algebra,
)
from .doubles import (
    RMatrix,
    catalog_group,
    check_quasitriangular,
    check_qybe,
    drin_group_product_closed_form,
    drinfeld_double,
    find_ribbon,
    group_algebra,
    verify_ribbon,
)
from .hopf import (
    NoAntipode,
    VerificationFailure,
    VerificationReport,
    check_hopf,
    check_semisimple,
)
from .linalg import accumulate, diff_witness
from .modules import Module, regular_module
from .reflective import (
    EXHAUSTIVE_DIM,
    cocommutative_drin_coaction,
    drin_coaction_ref,
    drin_group_closed_form,
    kappa,
    reflective_algebra,
    transmute,
)
from .representations import (
    DoiHopfModule,
    check_braided_module,
    conjugation_yd_module,
    doi_hopf_check,
    omega_functor,
    omega_inverse_functor,
    typeB_operators,
    yd_translate_back,
)

log = logging.getLogger("reflectum")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class MissingPrerequisite(RuntimeError):
    pass


def max_dim() -> int:
    try:
        return int(os.environ.get("REFLECTUM_MAX_DIM", "2000"))
    except ValueError:
        raise rio.InputError("REFLECTUM_MAX_DIM must be an integer")


def guard_dim(dim: int, what: str):
    limit = max_dim()
    if dim > limit:
        raise rio.InputError(f"{what} would have dimension {dim} > REFLECTUM_MAX_DIM={limit}")


# ---------------------------------------------------------------- inputs


@dataclass
class Subject:
    """The quasitriangular Hopf algebra under test and where it came from."""

    H: object
    R: RMatrix
    group: object = None     # FiniteGroup when built from a group
    base: object = None      # the Hopf algebra whose double H is, if any
    source: str = ""


def load_group(ref: str):
    if Path(ref).exists():
        return rio.read_group(rio.validated(rio.load_json(ref), "group"))
    try:
        return catalog_group(ref)
    except (KeyError, ValueError):
        raise rio.InputError(f"no such file or catalog group: {ref}")


def subject_from_args(args) -> Subject:
    if getattr(args, "group", None):
        G = load_group(args.group)
        guard_dim(G.order ** 2, "Drin(kG)")
        H0 = group_algebra(G)
        D, R = drinfeld_double(H0)
        return Subject(D, R, G, H0, args.group)
    if getattr(args, "hopf", None):
        data = rio.validated(rio.load_json(args.hopf), "hopf")
        H = rio.read_hopf(data)
        if H.r_matrix is not None:
            return Subject(H, H.r_matrix, source=args.hopf)
        guard_dim(H.dim ** 2, f"Drin({H.name})")
        D, R = drinfeld_double(H)
        return Subject(D, R, base=H, source=args.hopf)
    raise rio.InputError("one of --group or --hopf is required")


def comodule_from_args(args, H) -> ComoduleAlgebra:
    ref = getattr(args, "comod", None) or "trivial"
    kw = rio.comodule_keyword(ref, H)
    if kw is not None:
        return kw
    data = rio.validated(rio.load_json(ref), "comodule-algebra")
    CA = rio.read_comodule(data, host=H)
    return CA


# ---------------------------------------------------------------- suite


@dataclass
class SuiteConfig:
    pipeline: str = "full"          # double | reflective | full
    ribbon: bool = True
    drin_coaction: bool = False
    legs: int = 2
    kmatrix: str | None = None
    fmt: str = "text"
    jobs: int = 1
    sections: list = field(default_factory=list)


def _section(title: str) -> VerificationReport:
    return VerificationReport(title)


def run_suite(S: Subject, A: ComoduleAlgebra | None, cfg: SuiteConfig) -> list:
    """Run the selected checks; returns the list of report sections."""
    H, R = S.H, S.R
    out = []
    if cfg.pipeline in ("double", "full"):
        out.append(check_hopf(H))
        out.append(check_quasitriangular(H, R))
        out.append(check_qybe(H, R))
        if S.group is not None:
            rep = _section("closed-form product of Drin(kG)")
            cf = drin_group_product_closed_form(S.group)
            tab = H.algebra.table()
            w = next(({"index": [i, j], "discrepancy": diff_witness(cf[i][j], tab[i][j])}
                      for i in range(H.dim) for j in range(H.dim) if cf[i][j] != tab[i][j]), None)
            rep.add("pipeline product = closed-form product", w is None, "Drin-prod", w)
            out.append(rep)
    if cfg.pipeline == "double":
        return out

    A = A or trivial_comodule_algebra(H)
    guard_dim(H.dim * A.algebra.dim, "R_H(A)")
    out.append(check_comodule_algebra(A) if A.algebra.dim <= EXHAUSTIVE_DIM
               else _section("input comodule algebra (large: checked through R_H(A))"))
    try:
        RA = reflective_algebra(H, R, A)
    except VerificationFailure as exc:
        out.append(exc.report)
        return out
    out.append(RA.report)
    basis = None if RA.dim <= EXHAUSTIVE_DIM else RA.generator_indices()
    if cfg.kmatrix:
        data = rio.validated(rio.load_json(cfg.kmatrix), "kmatrix")
        cdata = rio.validated(rio._resolve(data["comodule"], data), "comodule-algebra")
        K = rio.read_kmatrix(data, rio.read_comodule(cdata, host=H))
        basis = None
    else:
        K = RA.k_ref
    out.append(check_kmatrix(K, R, basis))

    if cfg.pipeline == "full":
        if A.algebra.dim == 1 and not cfg.kmatrix:
            kap, rep = kappa(H, R, RA.comod, K, R_k=RA)
            rep.add("κ = ι on the dual factor", kap == RA.iota_Hstar, "init-obj")
            out.append(rep)
        if S.group is not None and A.algebra.dim == 1:
            out.append(_oracle_section(S, RA))
            rep = _section("semisimplicity")
            rep.add("R_H(k) semisimple (trace form)", check_semisimple(RA.base), "RHA-props")
            out.append(rep)
        out.extend(_module_sections(S, RA, K, cfg))
        if cfg.drin_coaction:
            out.extend(_drin_sections(S, RA))
    return out


def _oracle_section(S: Subject, RA) -> VerificationReport:
    cf = drin_group_closed_form(S.group)
    rep = _section("closed forms for R_{Drin(G)}(k)")
    tab = RA.base.table()
    rep.add("product", cf["product"] == tab, "closed-form",
            None if cf["product"] == tab else {"index": [], "discrepancy": {"product": "differs"}})
    w = next(({"index": [i], "discrepancy": diff_witness(cf["coaction"][i], RA.delta_ref[i])}
              for i in range(RA.dim) if cf["coaction"][i] != RA.delta_ref[i]), None)
    rep.add("coaction δ_ref", w is None, "closed-form", w)
    k = RA.k_ref.element.coeffs
    rep.add("K-matrix", cf["kmatrix"] == k, "closed-form",
            {"index": [], "discrepancy": diff_witness(cf["kmatrix"], k)})
    return rep


def _module_sections(S: Subject, RA, K: KMatrix, cfg: SuiteConfig) -> list:
    H, R = S.H, S.R
    out = []
    X = regular_module(H, f"reg {H.name}")
    M = regular_module(K.comod.algebra, "reg A")
    if X.dim * X.dim * M.dim <= 50000:
        out.append(check_braided_module(K, R, X, X, M))
    else:
        rep = _section("braided module axioms")
        rep.skip("operator identities on regular modules", "brmod1", "tensor space too large")
        out.append(rep)
    if K is RA.k_ref:
        MR = regular_module(RA.base, "reg R_H(A)")
        Dh: DoiHopfModule = omega_inverse_functor(MR, RA)
        rep = doi_hopf_check(Dh)
        back = omega_functor(Dh, RA)
        rep.add("Ω(Ω⁻¹(M)) = M on the regular module", back.action == MR.action, "DH-double")
        out.append(rep)

    ribbon = _section("ribbon element")
    if not cfg.ribbon:
        for name, tag in (("ribbon element", "ribbon"), ("K-matrix equivalents", "K2a"),
                          ("reflection equation", "reflection-eq"), ("type-B operators", "braid")):
            ribbon.skip(name, tag, "--skip-ribbon")
        out.append(ribbon)
        return out
    v, how = find_ribbon(H, R)
    if v is None:
        ribbon.skip("ribbon element", "ribbon", how)
        out.append(ribbon)
        out.append(check_k_equivalents(K, None, R))
        out.append(check_reflection_equation(R, None))
        return out
    ribbon.extend(verify_ribbon(H, R, v))
    ribbon.checks[0].detail = how
    out.append(ribbon)
    basis = None if K.comod.algebra.dim <= EXHAUSTIVE_DIM else RA.generator_indices()
    out.append(check_k_equivalents(K, v, R, basis))
    Kt = ktilde(K, v)
    out.append(check_reflection_equation(R, Kt))
    Xb = X
    if S.group is not None:
        Xb = yd_translate_back(conjugation_yd_module(S.group, S.base), H)
    if Xb.dim ** cfg.legs * M.dim <= 200000:
        out.append(typeB_operators(R, Kt, Xb, M, cfg.legs).report)
    else:
        rep = _section("type-B operators")
        rep.skip("braid relations", "braid", "tensor space too large")
        out.append(rep)
    return out


def _drin_sections(S: Subject, RA) -> list:
    """δ^Drin_ref; for group input it is taken over kG (R = 1⊗1), where the
    cocommutative closed formula applies."""
    out = []
    if S.group is not None:
        H0 = S.base
        R0 = H0.r_matrix
        RA0 = reflective_algebra(H0, R0, trivial_comodule_algebra(H0))
        CA, rep = drin_coaction_ref(H0, R0, RA0, D=S.H)
        out.append(rep)
        cf = cocommutative_drin_coaction(H0, RA0)
        r2 = _section("cocommutative closed formula")
        w = next(({"index": [i], "discrepancy": diff_witness(cf[i], CA.coaction[i])}
                  for i in range(RA0.dim) if cf[i] != CA.coaction[i]), None)
        r2.add("δ^Drin_ref = closed formula", w is None, "cocom-Drin", w)
        out.append(r2)
    else:
        guard_dim(S.H.dim ** 2, "Drin(H)")
        CA, rep = drin_coaction_ref(S.H, S.R, RA)
        out.append(rep)
    return out


# ---------------------------------------------------------------- output


def render(sections, fmt: str, name: str = "", elapsed: float | None = None) -> str:
    if fmt == "json":
        return rio.dumps(rio.report_to_json(sections, name))
    parts = [s.render() for s in sections]
    ok = all(s.ok for s in sections)
    tail = f"OVERALL: {'PASS' if ok else 'FAIL'}"
    if elapsed is not None:
        tail += f" ({elapsed:.1f} s)"
    return "\n".join(parts + [tail]) + "\n"


def _emit(text: str):
    sys.stdout.write(text)
    sys.stdout.flush()


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    data = rio.load_json(args.file)
    kind = rio.validate_schema(data, rio._where(data))
    if kind == "group":
        G = rio.read_group(data)
        rep = check_hopf(group_algebra(G))
        rep.title = f"group algebra of {G.name or args.file} (order {G.order})"
        sections = [rep]
    elif kind == "hopf":
        try:
            H = rio.read_hopf(data)
        except NoAntipode as exc:
            rep = _section("Hopf algebra")
            rep.add("antipode exists", False, "antipode", {"index": [], "discrepancy": {"S": str(exc)}})
            sections = [rep]
        else:
            sections = [check_hopf(H)]
            if H.r_matrix is not None:
                sections += [check_quasitriangular(H, H.r_matrix), check_qybe(H, H.r_matrix)]
    elif kind == "comodule-algebra":
        sections = [check_comodule_algebra(rio.read_comodule(data))]
    elif kind == "kmatrix":
        K = rio.read_kmatrix(data)
        R = K.comod.host.r_matrix
        if R is None:
            raise MissingPrerequisite("the host Hopf algebra of the K-matrix has no r_matrix")
        sections = [check_kmatrix(K, R)]
    elif kind == "module":
        alg = rio._resolve(data["algebra"], data)
        A = _algebra_of(alg)
        M = Module(A, data["dim"], rio.read_action(data["action"], A.dim, data["dim"],
                                                    f"{rio._where(data)}action"), data.get("name", ""))
        sections = [M.check()]
    elif kind == "doi-hopf":
        sections = [doi_hopf_check(_read_doi_hopf(data))]
    else:  # rmatrix: nothing to check without its host
        rep = _section("R-matrix file")
        rep.add(f"{len(data['entries'])} entries parse as rationals", True, "QT")
        sections = [rep]
    _emit(render(sections, args.format, args.file))
    return EXIT_OK if all(s.ok for s in sections) else EXIT_FAIL


def _algebra_of(data):
    kind = rio.validate_schema(data, rio._where(data))
    if kind == "hopf":
        return rio.read_hopf(data)
    if kind == "comodule-algebra":
        return rio.read_comodule(data).algebra
    raise rio.InputError("module algebra must be a hopf or comodule-algebra file", rio._where(data))


def _read_doi_hopf(data) -> DoiHopfModule:
    cdata = rio.validated(rio._resolve(data["comodule"], data), "comodule-algebra")
    CA = rio.read_comodule(cdata)
    H = CA.host
    if H.r_matrix is None:
        raise MissingPrerequisite("the host Hopf algebra has no r_matrix")
    dim = data["dim"]
    w = rio._where(data)
    act = rio.read_action(data["action"], CA.algebra.dim, dim, f"{w}action")
    coaction = [dict() for _ in range(dim)]
    for n, (m, c, mp, v) in enumerate(data["coaction"]):
        rio._check_index(m, dim, f"{w}coaction[{n}]")
        rio._check_index(c, H.dim, f"{w}coaction[{n}]")
        rio._check_index(mp, dim, f"{w}coaction[{n}]")
        accumulate(coaction[m], (c, mp), rio.parse_rational(v, f"{w}coaction[{n}]"))
    return DoiHopfModule(Module(CA.algebra, dim, act, data.get("name", "")), coaction, CA,
                         transmute(H, H.r_matrix))


def cmd_build(args) -> int:
    out = Path(args.out)
    t0 = time.time()
    if args.kind == "drin":
        S = subject_from_args(args)
        if S.base is None:
            raise rio.InputError("build drin needs --group or a --hopf file without r_matrix")
        sections = [check_hopf(S.H), check_quasitriangular(S.H, S.R), check_qybe(S.H, S.R)]
        stem = f"drin_{Path(S.source).stem}"
        rio.write_json(out / f"{stem}.json", rio.hopf_to_json(S.H, S.R))
        rio.write_json(out / f"{stem}_R.json", rio.rmatrix_to_json(S.R))
    else:
        S = subject_from_args(args)
        A = comodule_from_args(args, S.H)
        guard_dim(S.H.dim * A.algebra.dim, "R_H(A)")
        try:
            RA = reflective_algebra(S.H, S.R, A)
        except VerificationFailure as exc:
            _emit(render([exc.report], args.format, "build reflective"))
            return EXIT_FAIL
        basis = None if RA.dim <= EXHAUSTIVE_DIM else RA.generator_indices()
        sections = [RA.report, check_kmatrix(RA.k_ref, S.R, basis)]
        rio.write_json(out / "hopf.json", rio.hopf_to_json(S.H, S.R))
        rio.write_json(out / "algebra.json", rio.comodule_to_json(RA.comod, "hopf.json"))
        rio.write_json(out / "kref.json", rio.kmatrix_to_json(RA.k_ref, "algebra.json", "K_ref"))
        rio.write_json(out / "delta_ref.json", rio.coaction_to_json(RA.comod, "hopf.json", "δ_ref"))
        if args.drin:
            guard_dim(S.H.dim ** 2, "Drin(H)")
            CA, rep = drin_coaction_ref(S.H, S.R, RA)
            sections.append(rep)
            rio.write_json(out / "delta_drin_ref.json",
                           rio.coaction_to_json(CA, f"Drin({S.H.name})", "δ^Drin_ref"))
    rio.write_json(out / "report.json", rio.report_to_json(sections, f"build {args.kind}"))
    _emit(render(sections, args.format, f"build {args.kind}",
                 None if args.format == "json" else time.time() - t0))
    return EXIT_OK if all(s.ok for s in sections) else EXIT_FAIL


def cmd_check(args) -> int:
    t0 = time.time()
    S = subject_from_args(args)
    A = comodule_from_args(args, S.H)
    cfg = SuiteConfig(pipeline=args.suite, ribbon=not args.skip_ribbon, drin_coaction=args.drin,
                      legs=args.legs, kmatrix=args.kmatrix, fmt=args.format, jobs=args.jobs)
    sections = run_suite(S, A, cfg)
    if args.out:
        rio.write_json(args.out, rio.report_to_json(sections, f"check {S.source}"))
    _emit(render(sections, args.format, f"check {S.source}",
                 None if args.format == "json" else time.time() - t0))
    return EXIT_OK if all(s.ok for s in sections) else EXIT_FAIL


def cmd_export(args) -> int:
    S = subject_from_args(args)
    A = comodule_from_args(args, S.H)
    guard_dim(S.H.dim * A.algebra.dim, "R_H(A)")
    RA = reflective_algebra(S.H, S.R, A)
    out = Path(args.out)
    stem = out.with_suffix("")
    if args.what == "kmatrix":
        hopf_name = f"{stem.name}.hopf.json"
        alg_name = f"{stem.name}.algebra.json"
        rio.write_json(stem.parent / hopf_name, rio.hopf_to_json(S.H, S.R))
        rio.write_json(stem.parent / alg_name, rio.comodule_to_json(RA.comod, hopf_name))
        rio.write_json(out, rio.kmatrix_to_json(RA.k_ref, alg_name, "K_ref"))
        rep = _section("export kmatrix")
        rep.add(f"wrote {RA.k_ref.comod.host.dim}x{RA.dim} K-matrix", True, "K")
    elif args.what == "braid":
        v, how = find_ribbon(S.H, S.R)
        if v is None:
            raise MissingPrerequisite(f"no verified ribbon element ({how})")
        X = regular_module(S.H, f"reg {S.H.name}")
        if args.module == "conjugation":
            if S.group is None:
                raise rio.InputError("--module conjugation needs --group")
            X = yd_translate_back(conjugation_yd_module(S.group, S.base), S.H)
        M = regular_module(RA.base, "reg R_H(A)")
        tb = typeB_operators(S.R, ktilde(RA.k_ref, v), X, M, args.legs)
        rio.write_json(out, rio.matrix_bundle(tb.generators(), tb.report, f"type-B, {args.legs} legs"))
        rep = tb.report
    else:
        if args.drin:
            guard_dim(S.H.dim ** 2, "Drin(H)")
            CA, rep = drin_coaction_ref(S.H, S.R, RA)
            rio.write_json(out, rio.coaction_to_json(CA, f"Drin({S.H.name})", "δ^Drin_ref"))
        else:
            rio.write_json(out, rio.coaction_to_json(RA.comod, S.H.name, "δ_ref"))
            rep = _section("export coaction")
            rep.add(f"wrote δ_ref on {RA.dim}-dim algebra", True, "delta-ref")
    _emit(render([rep], args.format, f"export {args.what}"))
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflectum", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inputs=True):
        sp.add_argument("--format", choices=["text", "json"], default="text")
        sp.add_argument("--jobs", type=int, default=1, help="worker bound (results do not depend on it)")
        if inputs:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--group", help="group file or catalog name (C1, C2, C3, S3)")
            g.add_argument("--hopf", help="Hopf algebra file (with r_matrix: used as is)")
            sp.add_argument("--comod", help="comodule algebra file, or 'trivial' / 'regular'")

    v = sub.add_parser("validate", help="check a structure file")
    v.add_argument("file")
    common(v, inputs=False)
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("build", help="construct Drin(H) or R_H(A)")
    b.add_argument("kind", choices=["drin", "reflective"])
    b.add_argument("--out", default="build")
    b.add_argument("--drin", action="store_true", help="also write the Drin(H)-coaction")
    common(b)
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="run a verification suite")
    c.add_argument("--suite", choices=["double", "reflective", "full"], default="full")
    c.add_argument("--skip-ribbon", action="store_true")
    c.add_argument("--legs", type=int, default=2)
    c.add_argument("--drin", action="store_true", help="include the Drin(H)-coaction checks")
    c.add_argument("--kmatrix", help="K-matrix file to check instead of K_ref")
    c.add_argument("--out", help="also write the JSON report here")
    common(c)
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("export", help="write matrix bundles")
    e.add_argument("what", choices=["braid", "kmatrix", "coaction"])
    e.add_argument("--out", required=True)
    e.add_argument("--legs", type=int, default=2)
    e.add_argument("--drin", action="store_true")
    e.add_argument("--module", choices=["regular", "conjugation"], default="regular",
                   help="H-module used for the braid legs")
    common(e)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "legs", 1) < 1 or args.jobs < 1:
        print("error: --legs and --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except rio.InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MissingPrerequisite as exc:
        print(f"missing prerequisite: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except VerificationFailure as exc:
        print(exc.report.render(), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
