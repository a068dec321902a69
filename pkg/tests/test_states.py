import math

import numpy as np
import pytest

from ladderkit.algebra import OperatorPoly
from ladderkit.core.errors import SeriesError
from ladderkit.engine import LadderConstruction, SqueezeParams, coherent_state_coeffs, squeezed_annihilator
from ladderkit.engine.states import poisson_mean
from ladderkit.numeric.coherent import coherent_residual, squeezed_residual, squeezed_vacuum_coeffs

q = OperatorPoly.position()


def test_coherent_coefficients_are_poissonian():
    coeffs = coherent_state_coeffs(40, 1.5)
    assert np.linalg.norm(coeffs) == pytest.approx(1.0)
    assert poisson_mean(coeffs) == pytest.approx(2.25)


def test_coherent_state_is_an_eigenvector_of_the_corrected_annihilator():
    construction = LadderConstruction.build(q, 2, "unit")
    assert coherent_residual(construction, 0.5, 12, 0.01, 40) < 1e-4


def test_squeezed_vacuum_is_annihilated():
    construction = LadderConstruction.build(q, 2, "unit")
    params = SqueezeParams(0.3, 0.5)
    assert squeezed_residual(construction, params, 30, 0.01, 64) < 1e-4


def test_squeezed_vacuum_coefficients():
    coeffs = squeezed_vacuum_coeffs(SqueezeParams(0.4), 60)
    assert np.all(coeffs[1::2] == 0)
    assert np.linalg.norm(coeffs) == pytest.approx(1.0, abs=1e-8)


def test_squeezing_needs_unit_normalization():
    construction = LadderConstruction.build(q, 2)
    with pytest.raises(SeriesError):
        squeezed_residual(construction, SqueezeParams(0.2), 10, 0.01, 30)


def test_zero_squeeze_is_the_identity():
    alphas = LadderConstruction.build(q, 1).alphas
    assert squeezed_annihilator(alphas, SqueezeParams(0.0)) is alphas


@pytest.mark.parametrize("r, theta", [(-0.1, 0.0), (0.1, 2 * math.pi)])
def test_squeeze_parameter_ranges(r, theta):
    with pytest.raises(ValueError):
        SqueezeParams(r, theta)


def test_squeezed_annihilator_keeps_the_canonical_commutator():
    alphas = LadderConstruction.build(q, 3, "unit").alphas
    squeezed = squeezed_annihilator(alphas, SqueezeParams(0.4, 1.1))
    bracket = squeezed.commutator(squeezed.dagger())
    assert bracket[0].coefficient(0, 0).to_complex() == pytest.approx(1.0)
    for m, poly in enumerate(bracket):
        for key, c in poly.items():
            if (m, key) != (0, (0, 0)):
                assert abs(c.to_complex()) < 1e-12
