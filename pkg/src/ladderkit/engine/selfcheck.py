# ladderkit/engine/selfcheck.py
"""
Exact consistency checks on random Hermitian perturbations.

For each V = P + P† (integer coefficients, optional factor i):
  - the recursive α_2 equals the three-term closed form (intermediate states),
  - with unit-normalized states [ã, ã†] − 1 vanishes through order M,
  - with unit-normalized states the Ñ recursion equals ã†ã through order M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ladderkit.algebra.operator_poly import OperatorPoly, dagger
from ladderkit.algebra.scalar import Scalar
from ladderkit.engine.perturbation import (
    LadderConstruction,
    alpha2_closed_form,
    numbers_from_omegas,
)


def random_hermitian(rng: np.random.Generator, max_degree: int = 4, max_terms: int = 3) -> OperatorPoly:
    """P + P† with up to max_terms monomials a†^j a^k, j + k ≤ max_degree; never zero."""
    keys = [(j, k) for j in range(max_degree + 1) for k in range(max_degree + 1 - j) if j + k > 0]
    while True:
        count = int(rng.integers(1, max_terms + 1))
        picks = rng.choice(len(keys), size=count, replace=False)
        terms: Dict[tuple, Scalar] = {}
        for index in picks:
            value = int(rng.integers(-3, 4))
            coeff = Scalar.of(value) if rng.random() < 0.5 else Scalar.i() * value
            terms[keys[int(index)]] = coeff
        P = OperatorPoly(terms)
        V = P + dagger(P)
        if not V.is_zero:
            return V


@dataclass
class SelfCheckResult:
    V: OperatorPoly
    order: int
    alpha2_matches: Optional[bool]
    commutator_defect: Optional[int]
    number_matches: bool
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.alpha2_matches is not False and self.commutator_defect is None and self.number_matches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "V": str(self.V),
            "order": self.order,
            "alpha2_matches": self.alpha2_matches,
            "commutator_defect": self.commutator_defect,
            "number_matches": self.number_matches,
            "pass": self.passed,
            "notes": list(self.notes),
        }


def check_perturbation(V: OperatorPoly, order: int) -> SelfCheckResult:
    alpha2_matches: Optional[bool] = None
    if order >= 2:
        intermediate = LadderConstruction.build(V, 2, "intermediate")
        alpha2_matches = intermediate.alphas[2] == alpha2_closed_form(V)
    unit = LadderConstruction.build(V, order, "unit")
    recursive_numbers = numbers_from_omegas(unit.states.omegas)
    return SelfCheckResult(
        V=V,
        order=order,
        alpha2_matches=alpha2_matches,
        commutator_defect=unit.defect_order,
        number_matches=recursive_numbers == unit.numbers,
    )


def run_selfcheck(count: int, order: int, seed: int = 0, max_degree: int = 4) -> List[SelfCheckResult]:
    rng = np.random.default_rng(seed)
    return [check_perturbation(random_hermitian(rng, max_degree), order) for _ in range(count)]
