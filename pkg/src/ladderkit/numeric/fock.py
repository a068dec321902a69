# ladderkit/numeric/fock.py
"""Dense truncated Fock-space matrices (the oracle side; floats only here)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ladderkit.algebra.diagonal import falling_factorial, rising_factorial
from ladderkit.algebra.operator_poly import OperatorPoly


@dataclass(frozen=True)
class UnitValues:
    """Numeric values substituted for ħ, m, ω."""

    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.hbar, self.mass, self.omega

    @classmethod
    def natural(cls) -> "UnitValues":
        return cls()


class FockMatrix:
    """Row/column index = Fock level 0..D−1."""

    __slots__ = ("entries",)

    def __init__(self, entries: np.ndarray):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"Fock matrices are square, got shape {entries.shape}")
        self.entries = entries

    @classmethod
    def zeros(cls, dim: int) -> "FockMatrix":
        return cls(np.zeros((dim, dim), dtype=complex))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.entries + other.entries)

    def __sub__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.entries - other.entries)

    def __mul__(self, factor: complex) -> "FockMatrix":
        return FockMatrix(self.entries * factor)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, FockMatrix):
            return FockMatrix(self.entries @ other.entries)
        return self.entries @ np.asarray(other)

    def dagger(self) -> "FockMatrix":
        return FockMatrix(self.entries.conj().T)

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def bandwidth(self) -> int:
        rows, cols = np.nonzero(self.entries)
        if rows.size == 0:
            return 0
        return int(np.max(np.abs(rows - cols)))

    def block(self, size: int) -> np.ndarray:
        return self.entries[:size, :size]


def to_matrix(x: OperatorPoly, dim: int, units: UnitValues = UnitValues()) -> FockMatrix:
    """
    Exact action of x on |0⟩..|D−1⟩, kept where the image stays below D:
    a†^j a^k|n⟩ = √(n^(k, falling) · (n−k+1)^(j, rising)) |n−k+j⟩.
    """
    if dim < 1:
        raise ValueError("Fock cutoff must be at least 1")
    out = np.zeros((dim, dim), dtype=complex)
    for (j, k), c in x.items():
        value = c.to_complex(*units.as_tuple())
        if value == 0:
            continue
        for n in range(k, dim):
            target = n - k + j
            if target >= dim:
                break
            amp = math.sqrt(falling_factorial(n, k) * rising_factorial(n - k + 1, j))
            out[target, n] += value * amp
    return FockMatrix(out)


def series_matrix(coeffs: Sequence[OperatorPoly], lam: float, dim: int, units: UnitValues = UnitValues()) -> FockMatrix:
    """Σ_m λ^m matrix(coeffs[m])."""
    total = FockMatrix.zeros(dim)
    for m, c in enumerate(coeffs):
        if c.is_zero:
            continue
        total = total + to_matrix(c, dim, units) * (lam ** m)
    return total


def unperturbed_energies(dim: int, units: UnitValues = UnitValues()) -> np.ndarray:
    return units.hbar * units.omega * (np.arange(dim) + 0.5)


def hamiltonian_matrix(V: OperatorPoly, lam: float, dim: int, units: UnitValues = UnitValues()) -> FockMatrix:
    """H₀ + λV"""
    h0 = FockMatrix(np.diag(unperturbed_energies(dim, units)).astype(complex))
    return h0 + to_matrix(V, dim, units) * lam


def basis_vector(n: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v


def perturbed_superposition(
    omegas: Sequence[OperatorPoly],
    coeffs: np.ndarray,
    lam: float,
    dim: int,
    units: UnitValues = UnitValues(),
) -> np.ndarray:
    """Σ_n c_n |n⁽ᴹ⁾⟩ in the unperturbed basis, |n⁽ᴹ⁾⟩ = Σ_m λ^m Ω_m|n⟩."""
    omega_total = series_matrix(omegas, lam, dim, units)
    start = np.zeros(dim, dtype=complex)
    count = min(len(coeffs), dim)
    start[:count] = coeffs[:count]
    return omega_total @ start
