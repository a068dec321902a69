from .fock import FockMatrix, UnitValues, hamiltonian_matrix, series_matrix, to_matrix
from .jacobi import eig_hermitian
from .rs_sums import PerturbedLevel, rs_sums
from .verify import (
    VerificationCheck,
    VerificationReport,
    VerificationRunner,
    alpha_oracle_matrix,
    interior_levels,
    minimum_cutoff,
)
from .errata import ErrataItem, items_for, run_errata

__all__ = [
    "FockMatrix",
    "UnitValues",
    "hamiltonian_matrix",
    "series_matrix",
    "to_matrix",
    "eig_hermitian",
    "PerturbedLevel",
    "rs_sums",
    "VerificationCheck",
    "VerificationReport",
    "VerificationRunner",
    "alpha_oracle_matrix",
    "interior_levels",
    "minimum_cutoff",
    "ErrataItem",
    "items_for",
    "run_errata",
]
