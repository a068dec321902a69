# ladderkit/engine/expectation.py
"""Expectation values and norms of perturbed eigenstates as λ-series of polynomials in n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ladderkit.algebra.diagonal import DiagonalPoly, diagonal_as_npoly
from ladderkit.algebra.operator_poly import OperatorPoly, check, dagger
from ladderkit.core.errors import SeriesError
from ladderkit.engine.perturbation import StateCorrectionOps, state_corrections
from ladderkit.engine.series import OperatorSeries


@dataclass(frozen=True)
class ExpectationResult:
    """value[m], norm[m]: λ^m coefficients of ⟨n|O|n⟩ and ⟨n|n⟩; ratio is value/norm as a series."""

    value: Tuple[DiagonalPoly, ...]
    norm: Tuple[DiagonalPoly, ...]
    ratio: Tuple[DiagonalPoly, ...]

    @property
    def order(self) -> int:
        return len(self.value) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": [p.to_dict() for p in self.value],
            "norm": [p.to_dict() for p in self.norm],
            "ratio": [p.to_dict() for p in self.ratio],
        }


def sandwich_series(omegas: Sequence[OperatorPoly], observable: OperatorSeries, order: int) -> List[DiagonalPoly]:
    """
    ⟨n|O|n⟩ coefficients for an observable that is itself a λ-series:
    out[t] = Σ_{l+l'+k=t} ⟨n⁽⁰⁾|Ω_l'† O_k Ω_l|n⁽⁰⁾⟩.
    """
    daggers = [dagger(w) for w in omegas]
    out = []
    for total in range(order + 1):
        acc = DiagonalPoly.zero()
        for k in range(total + 1):
            o_k = observable[k]
            if o_k.is_zero:
                continue
            for l in range(total - k + 1):
                lp = total - k - l
                if lp >= len(omegas) or l >= len(omegas):
                    continue
                acc = acc + diagonal_as_npoly(check(daggers[lp] * o_k * omegas[l]))
        out.append(acc)
    return out


def divide_series(value: Sequence[DiagonalPoly], norm: Sequence[DiagonalPoly]) -> List[DiagonalPoly]:
    """value/norm as a truncated λ-series; norm[0] must be 1."""
    if norm[0] != DiagonalPoly.constant(1):
        raise SeriesError("normalized ratio needs a norm series starting at 1")
    out: List[DiagonalPoly] = []
    for m in range(len(value)):
        r = value[m]
        for l in range(1, m + 1):
            r = r - norm[l] * out[m - l]
        out.append(r)
    return out


def expectation(
    V: OperatorPoly,
    O: OperatorPoly,
    order: int,
    normalization: str = "intermediate",
    states: Optional[StateCorrectionOps] = None,
) -> ExpectationResult:
    if states is None:
        states = state_corrections(V, order, normalization)
    omegas = states.omegas[: order + 1]
    value = sandwich_series(omegas, OperatorSeries.constant(O, order), order)
    norm = sandwich_series(omegas, OperatorSeries.identity(order), order)
    return ExpectationResult(tuple(value), tuple(norm), tuple(divide_series(value, norm)))


def tilde_expectation(states: StateCorrectionOps, F: OperatorSeries, order: int) -> List[DiagonalPoly]:
    """⟨n|F(ã, ã†)|n⟩ with F already expanded in a, a† (e.g. a product of α series)."""
    return sandwich_series(states.omegas, F, order)
