from .scalar import (
    DIMENSIONLESS,
    HBAR,
    MASS,
    OMEGA,
    FloatScalar,
    Scalar,
    ScalarSum,
    UnitMonomial,
    hbar_omega,
    scalar_conj,
    scalar_mul,
)
from .operator_poly import (
    OperatorPoly,
    TermExcess,
    bar,
    check,
    commutator,
    dagger,
    double_bar,
    require_hermitian,
    normal_order_product,
)
from .diagonal import DiagonalPoly, diagonal_as_npoly, level_amplitudes

__all__ = [
    "DIMENSIONLESS",
    "HBAR",
    "MASS",
    "OMEGA",
    "FloatScalar",
    "Scalar",
    "ScalarSum",
    "UnitMonomial",
    "hbar_omega",
    "scalar_conj",
    "scalar_mul",
    "OperatorPoly",
    "TermExcess",
    "bar",
    "check",
    "commutator",
    "dagger",
    "double_bar",
    "require_hermitian",
    "normal_order_product",
    "DiagonalPoly",
    "diagonal_as_npoly",
    "level_amplitudes",
]
