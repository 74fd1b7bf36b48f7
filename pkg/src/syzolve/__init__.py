"""Toeplitz and Toeplitz-block-Toeplitz solvers via syzygy (moving-line) bases."""

from .errors import (
    DegenerateSequenceError,
    LeadingCoefficientError,
    NumericalBreakdownError,
    SingularMatrixError,
    SyzolveError,
    UnsupportedFieldError,
)
from .estimators import TbtSystemSolver, ToeplitzSystemSolver
from .fields import QQ, RR, Float64Field, RationalField, field_by_name
from .poly import BiPoly, LaurentPoly, UniPoly
from .polydiv import PolyMat2, PolyVec2, matrix_divrem, newton_inverse_truncated
from .solver import SolveReport, compute_basis, solve
from .syzygy import SyzygyBasis, SyzygyVec3, generators_dense, generators_eea
from .tbt import TbtMatrix, generators_rho, solve_tbt
from .toeplitz import ToeplitzMatrix, dense_solve, matvec, symbols

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "DegenerateSequenceError",
    "Float64Field",
    "LaurentPoly",
    "LeadingCoefficientError",
    "NumericalBreakdownError",
    "PolyMat2",
    "PolyVec2",
    "QQ",
    "RR",
    "RationalField",
    "SingularMatrixError",
    "SolveReport",
    "SyzolveError",
    "SyzygyBasis",
    "SyzygyVec3",
    "TbtMatrix",
    "TbtSystemSolver",
    "ToeplitzMatrix",
    "ToeplitzSystemSolver",
    "UniPoly",
    "UnsupportedFieldError",
    "compute_basis",
    "dense_solve",
    "field_by_name",
    "generators_dense",
    "generators_eea",
    "generators_rho",
    "matrix_divrem",
    "matvec",
    "newton_inverse_truncated",
    "solve",
    "solve_tbt",
    "symbols",
]
