"""Multiplicity-free homogeneous operators on the unit disc.

Construction and numerical verification of the full family: orthonormal
bases of vector-valued polynomials, block weighted-shift matrices, group
multipliers, and matrix-valued reproducing kernels, with golden tests
against the explicit one- and two-block formulas.
"""

from .basis import (
    BasisVector,
    basis_value_matrix,
    e_basis,
    g_matrix,
    minus_F,
    op_E,
    op_F,
    op_H,
    sigma_cumulative,
    sigma_single,
    u_closed,
)
from .errors import (
    BranchWarning,
    ConfigError,
    DomainError,
    NormalizationError,
    PoleError,
    SingularGError,
    SingularKernelColumnError,
    SingularResolventError,
    TruncationLossWarning,
    ZeroBaseError,
)
from .kernel import (
    SampleGrid,
    check_positive_definite,
    check_quasi_invariance,
    d_j_diagonal,
    default_grid,
    kernel_Bj_closed,
    kernel_Kj,
    kernel_full,
    kernel_series,
    normalize_kernel,
)
from .mobius import (
    H,
    X,
    X0,
    X1,
    Y,
    Y_LOWER,
    GroupElement,
    LieAlgebraElement,
    act,
    derivative,
    exp_basis,
    infinitesimal_action,
)
from .operator import (
    TruncatedOperator,
    check_homogeneity,
    mobius_calculus,
    representation_matrix,
    shift_block,
    truncate,
)
from .representation import (
    ModelParams,
    TriangularRep,
    act_U,
    check_cocycle,
    multiplier_J,
    multiplier_J0,
)
from .scalars import VectorPolynomial, binom, cpow_principal, pochhammer, poly_eval

__version__ = "0.1.0"

__all__ = [
    "BasisVector",
    "BranchWarning",
    "ConfigError",
    "DomainError",
    "GroupElement",
    "H",
    "LieAlgebraElement",
    "ModelParams",
    "NormalizationError",
    "PoleError",
    "SampleGrid",
    "SingularGError",
    "SingularKernelColumnError",
    "SingularResolventError",
    "TriangularRep",
    "TruncatedOperator",
    "TruncationLossWarning",
    "VectorPolynomial",
    "X",
    "X0",
    "X1",
    "Y",
    "Y_LOWER",
    "ZeroBaseError",
    "act",
    "act_U",
    "basis_value_matrix",
    "binom",
    "check_cocycle",
    "check_homogeneity",
    "check_positive_definite",
    "check_quasi_invariance",
    "cpow_principal",
    "d_j_diagonal",
    "default_grid",
    "derivative",
    "e_basis",
    "exp_basis",
    "g_matrix",
    "infinitesimal_action",
    "kernel_Bj_closed",
    "kernel_Kj",
    "kernel_full",
    "kernel_series",
    "minus_F",
    "mobius_calculus",
    "multiplier_J",
    "multiplier_J0",
    "normalize_kernel",
    "op_E",
    "op_F",
    "op_H",
    "pochhammer",
    "poly_eval",
    "representation_matrix",
    "shift_block",
    "sigma_cumulative",
    "sigma_single",
    "truncate",
    "u_closed",
]
