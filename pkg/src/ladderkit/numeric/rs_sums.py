# ladderkit/numeric/rs_sums.py
"""
Literal Rayleigh–Schrödinger sums in a truncated Fock space.

Independent of the bar-transform shortcut: the reduced resolvent is applied
as an explicit division by E_n⁽⁰⁾ − E_j⁽⁰⁾ = ħω(n − j) over all j ≠ n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ladderkit.core.errors import CutoffMarginError
from ladderkit.numeric.fock import FockMatrix, UnitValues, basis_vector, unperturbed_energies

# levels closer than this to the cutoff are never reported
CUTOFF_GUARD = 4


def margin_ok(n: int, order: int, degree: int, dim: int) -> bool:
    return n + order * degree <= dim - CUTOFF_GUARD


def require_margin(n: int, order: int, degree: int, dim: int) -> None:
    if not margin_ok(n, order, degree, dim):
        raise CutoffMarginError(
            f"level {n} at order {order} with degree-{degree} perturbation needs cutoff "
            f">= {n + order * degree + CUTOFF_GUARD}, got {dim}",
            level=n,
            order=order,
            degree=degree,
            cutoff=dim,
        )


@dataclass
class PerturbedLevel:
    n: int
    energy_series: np.ndarray
    state_series: List[np.ndarray] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.energy_series) - 1

    def energy_at(self, lam: float) -> float:
        return float(sum(e * lam ** m for m, e in enumerate(self.energy_series)))

    def state_at(self, lam: float) -> np.ndarray:
        total = np.zeros_like(self.state_series[0])
        for m, eta in enumerate(self.state_series):
            total = total + eta * lam ** m
        return total

    def norm_series(self) -> np.ndarray:
        """Z_m = Σ_{l+l'=m} ⟨η_l'|η_l⟩"""
        out = np.zeros(self.order + 1, dtype=complex)
        for m in range(self.order + 1):
            out[m] = sum(np.vdot(self.state_series[m - l], self.state_series[l]) for l in range(m + 1))
        return out

    def normalized(self) -> "PerturbedLevel":
        """Same level with the state series rescaled by the series Z^(−1/2)."""
        z = self.norm_series()
        order = self.order
        x = np.concatenate([[0.0], z[1:]]).astype(complex)
        scale = np.zeros(order + 1, dtype=complex)
        term = np.zeros(order + 1, dtype=complex)
        term[0] = 1.0
        scale[0] = 1.0
        coeff = 1.0
        for k in range(1, order + 1):
            coeff *= (-0.5 - (k - 1)) / k
            term = np.array([sum(term[i] * x[m - i] for i in range(m + 1)) for m in range(order + 1)])
            scale = scale + coeff * term
        states = []
        for m in range(order + 1):
            states.append(sum(self.state_series[l] * scale[m - l] for l in range(m + 1)))
        return PerturbedLevel(self.n, self.energy_series.copy(), states)


def rs_sums(
    V: FockMatrix,
    order: int,
    n: int,
    units: UnitValues = UnitValues(),
    degree: Optional[int] = None,
) -> PerturbedLevel:
    """
    ε_m = ⟨n|V|η_{m−1}⟩,
    |η_m⟩ = Σ_{j≠n} |j⟩⟨j| [V|η_{m−1}⟩ − Σ_{l=1}^{m−1} ε_l|η_{m−l}⟩] / (E_n⁽⁰⁾ − E_j⁽⁰⁾).

    `degree` bounds the level reach of V; the matrix bandwidth is used when it
    is not given.
    """
    dim = V.dim
    reach = V.bandwidth() if degree is None else degree
    require_margin(n, order, reach, dim)

    energies0 = unperturbed_energies(dim, units)
    denom = energies0[n] - energies0
    mask = np.arange(dim) != n
    safe = np.where(mask, denom, 1.0)

    etas = [basis_vector(n, dim)]
    eps = [float(energies0[n])]
    for m in range(1, order + 1):
        v_eta = V.entries @ etas[m - 1]
        eps.append(float(v_eta[n].real))
        rhs = v_eta.copy()
        for l in range(1, m):
            rhs = rhs - eps[l] * etas[m - l]
        etas.append(np.where(mask, rhs / safe, 0.0))
    return PerturbedLevel(n, np.array(eps, dtype=float), etas)
