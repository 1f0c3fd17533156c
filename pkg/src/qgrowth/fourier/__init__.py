"""Desk-scale noncommutative harmonic analysis on finite quantum groups.

Two concrete models: the commutative model C(G) of a finite group with
explicit unitary irrep matrices, and the cocommutative model (the group
algebra of a finite group, irreps = group elements).  Coefficient-level
modular data for SU_q(2) supports the non-Kac involution tests without
any products.
"""

from .elements import (
    EllOneElement,
    QElement,
    bullet,
    haar,
    l1_norm,
    l1_norm_dual,
    multiply,
    random_qelement,
    star,
)
from .intertwiners import IntertwinerBasis, convolve, intertwiner_basis
from .models import (
    CoefficientSystem,
    FiniteQG,
    Su2qCoefficients,
    cocommutative_model,
    commutative_model,
    cyclic_model,
    load_group_rep_file,
    load_qelement_file,
    s3_model,
    save_qelement_file,
)
from .representations import (
    MatrixStarRep,
    norm_domination_check,
    point_evaluation_rep,
    regular_representation,
    representation_kernel,
    representation_matrix,
    star_rep_residual,
)
from .transform import (
    dual_star,
    fourier_transform,
    inverse_fourier,
    orthogonality_residual,
    plancherel_residual,
)

__all__ = [
    "CoefficientSystem",
    "EllOneElement",
    "FiniteQG",
    "IntertwinerBasis",
    "MatrixStarRep",
    "QElement",
    "Su2qCoefficients",
    "bullet",
    "cocommutative_model",
    "commutative_model",
    "convolve",
    "cyclic_model",
    "dual_star",
    "fourier_transform",
    "haar",
    "intertwiner_basis",
    "inverse_fourier",
    "l1_norm",
    "l1_norm_dual",
    "load_group_rep_file",
    "load_qelement_file",
    "multiply",
    "norm_domination_check",
    "orthogonality_residual",
    "plancherel_residual",
    "point_evaluation_rep",
    "random_qelement",
    "regular_representation",
    "representation_kernel",
    "representation_matrix",
    "s3_model",
    "save_qelement_file",
    "star",
    "star_rep_residual",
]
