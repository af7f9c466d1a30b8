"""Exact computations with multiplicative n-ary Hom-Lie color algebras."""

from .algebra import ColorAlgebra, HomMap, normalize_tuple, validate_algebra
from .builders import (build_abelian, build_regraded_a4, build_simple_nlie,
                       build_super_heis, build_twisted_a4, build_yau_twist)
from .grading import (Bicharacter, GradingGroup, GroupElement,
                      trivial_bicharacter, validate_bicharacter)
from .linalg import Matrix, nullspace, rank, solve_particular, span_basis
from .report import ValidationReport, Violation

__all__ = [
    "Bicharacter", "ColorAlgebra", "GradingGroup", "GroupElement", "HomMap",
    "Matrix", "ValidationReport", "Violation", "build_abelian",
    "build_regraded_a4", "build_simple_nlie", "build_super_heis",
    "build_twisted_a4", "build_yau_twist", "normalize_tuple", "nullspace",
    "rank", "solve_particular", "span_basis", "trivial_bicharacter",
    "validate_algebra", "validate_bicharacter",
]

__version__ = "0.1.0"
