from .series import OperatorSeries
from .perturbation import (
    EnergySeries,
    LadderConstruction,
    StateCorrectionOps,
    alpha_corrections,
    creation_corrections,
    energy_corrections,
    number_corrections,
    numbers_from_omegas,
    state_corrections,
)
from .inversion import invert_series, rewrite_in_tilde
from .expectation import ExpectationResult, expectation
from .states import SqueezeParams, coherent_state_coeffs, squeezed_annihilator

__all__ = [
    "OperatorSeries",
    "EnergySeries",
    "LadderConstruction",
    "StateCorrectionOps",
    "alpha_corrections",
    "creation_corrections",
    "energy_corrections",
    "number_corrections",
    "numbers_from_omegas",
    "state_corrections",
    "invert_series",
    "rewrite_in_tilde",
    "ExpectationResult",
    "expectation",
    "SqueezeParams",
    "coherent_state_coeffs",
    "squeezed_annihilator",
]
