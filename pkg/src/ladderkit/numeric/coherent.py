# ladderkit/numeric/coherent.py
"""Coherent and squeezed states built on the perturbed levels, checked as eigen/null vectors of ã."""

from __future__ import annotations

import cmath
import math

import numpy as np

from ladderkit.core.errors import SeriesError
from ladderkit.engine.perturbation import LadderConstruction
from ladderkit.engine.states import SqueezeParams, coherent_state_coeffs, squeezed_annihilator
from ladderkit.numeric.fock import UnitValues, perturbed_superposition, series_matrix


def coherent_state_vector(
    construction: LadderConstruction,
    alpha: complex,
    n_max: int,
    lam: float,
    dim: int,
    units: UnitValues = UnitValues(),
) -> np.ndarray:
    """Σ_{n ≤ n_max} e^{−|α|²/2} α^n/√n! |n⁽ᴹ⁾⟩ in the unperturbed basis."""
    coeffs = coherent_state_coeffs(n_max, alpha)
    return perturbed_superposition(construction.states.omegas, coeffs, lam, dim, units)


def coherent_residual(
    construction: LadderConstruction,
    alpha: complex,
    n_max: int,
    lam: float,
    dim: int,
    units: UnitValues = UnitValues(),
) -> float:
    """‖ã⁽ᴹ⁾ψ − αψ‖ / ‖ψ‖; small when λ is small and n_max covers the Poisson weight."""
    psi = coherent_state_vector(construction, alpha, n_max, lam, dim, units)
    a_tilde = series_matrix(construction.alphas.coeffs, lam, dim, units)
    return float(np.linalg.norm(a_tilde @ psi - alpha * psi) / np.linalg.norm(psi))


def squeezed_vacuum_coeffs(params: SqueezeParams, n_max: int) -> np.ndarray:
    """
    Null vector of a·cosh r − e^{iθ} a†·sinh r:
    c_{n+1} = e^{iθ} tanh r · √(n/(n+1)) · c_{n−1}, odd coefficients zero.
    """
    coeffs = np.zeros(n_max + 1, dtype=complex)
    coeffs[0] = 1.0 / math.sqrt(math.cosh(params.r))
    ratio = cmath.exp(1j * params.theta) * math.tanh(params.r)
    for n in range(1, n_max, 2):
        coeffs[n + 1] = ratio * math.sqrt(n / (n + 1)) * coeffs[n - 1]
    return coeffs


def squeezed_residual(
    construction: LadderConstruction,
    params: SqueezeParams,
    n_max: int,
    lam: float,
    dim: int,
    units: UnitValues = UnitValues(),
) -> float:
    """
    ‖ã_z ψ‖/‖ψ‖ for ψ = Σ c_n|n⁽ᴹ⁾⟩ with the squeezed-vacuum coefficients.

    ã† raises the perturbed levels only when they are orthonormal, so this
    needs the unit normalization.
    """
    if construction.normalization != "unit":
        raise SeriesError("squeezed states need unit-normalized levels (normalization='unit')")
    coeffs = squeezed_vacuum_coeffs(params, n_max)
    psi = perturbed_superposition(construction.states.omegas, coeffs, lam, dim, units)
    a_z = series_matrix(squeezed_annihilator(construction.alphas, params).coeffs, lam, dim, units)
    return float(np.linalg.norm(a_z @ psi) / np.linalg.norm(psi))
