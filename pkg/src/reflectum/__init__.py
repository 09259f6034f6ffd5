"""Exact verification of quasitriangular Hopf algebras, quantum K-matrices
and reflective algebras over the rationals."""

from .comodule import (
    ComoduleAlgebra,
    KMatrix,
    RibbonMissing,
    check_comodule_algebra,
    check_k_equivalents,
    check_kmatrix,
    check_reflection_equation,
    induced_action,
    ktilde,
    regular_comodule_algebra,
    trivial_comodule_algebra,
)
from .doubles import (
    FiniteGroup,
    RMatrix,
    catalog_group,
    check_quasitriangular,
    check_qybe,
    drinfeld_double,
    find_ribbon,
    group_algebra,
    verify_ribbon,
)
from .hopf import (
    Algebra,
    Coalgebra,
    HopfAlgebra,
    NoAntipode,
    VerificationFailure,
    VerificationReport,
    check_hopf,
    check_semisimple,
)
from .linalg import Matrix, MultiLegElement
from .modules import Module, regular_module, tensor_module
from .reflective import ReflectiveAlgebra, drin_coaction_ref, kappa, reflective_algebra

__version__ = "0.1.0"

__all__ = [
    "ComoduleAlgebra",
    "KMatrix",
    "RibbonMissing",
    "check_comodule_algebra",
    "check_k_equivalents",
    "check_kmatrix",
    "check_reflection_equation",
    "induced_action",
    "ktilde",
    "regular_comodule_algebra",
    "trivial_comodule_algebra",
    "FiniteGroup",
    "RMatrix",
    "catalog_group",
    "check_quasitriangular",
    "check_qybe",
    "drinfeld_double",
    "find_ribbon",
    "group_algebra",
    "verify_ribbon",
    "Algebra",
    "Coalgebra",
    "HopfAlgebra",
    "NoAntipode",
    "VerificationFailure",
    "VerificationReport",
    "check_hopf",
    "check_semisimple",
    "Matrix",
    "MultiLegElement",
    "Module",
    "regular_module",
    "tensor_module",
    "ReflectiveAlgebra",
    "drin_coaction_ref",
    "kappa",
    "reflective_algebra",
]
