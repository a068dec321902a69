# ladderkit/engine/states.py
"""Coherent and squeezed constructions on top of the corrected ladder operators."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ladderkit.algebra.scalar import FloatScalar
from ladderkit.engine.series import OperatorSeries


@dataclass(frozen=True)
class SqueezeParams:
    r: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError(f"squeeze magnitude must be non-negative, got {self.r}")
        if not 0.0 <= self.theta < 2 * math.pi:
            raise ValueError(f"squeeze phase must lie in [0, 2π), got {self.theta}")


def squeezed_annihilator(alphas: OperatorSeries, params: SqueezeParams) -> OperatorSeries:
    """ã_z = ã cosh r − e^{iθ} ã† sinh r, with float coefficients unless r = 0."""
    if params.r == 0:
        return alphas
    c = FloatScalar(math.cosh(params.r))
    s = FloatScalar(-cmath.exp(1j * params.theta) * math.sinh(params.r))
    creations = alphas.dagger()
    return OperatorSeries([alphas[m].scale(c) + creations[m].scale(s) for m in range(alphas.order + 1)])


def coherent_state_coeffs(n_max: int, alpha: complex) -> np.ndarray:
    """e^{−|α|²/2} α^n / √n!, n = 0..n_max (coefficients over the perturbed levels)."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    coeffs = np.empty(n_max + 1, dtype=complex)
    coeffs[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, n_max + 1):
        coeffs[n] = coeffs[n - 1] * alpha / math.sqrt(n)
    return coeffs


def poisson_mean(coeffs: np.ndarray) -> float:
    weights = np.abs(coeffs) ** 2
    return float(np.dot(np.arange(len(coeffs)), weights))
