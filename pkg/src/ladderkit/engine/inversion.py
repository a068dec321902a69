# ladderkit/engine/inversion.py
"""
Writing the original ladder operators in terms of the corrected ones.

The corrected pair (ã, ã†) is handled with the same OperatorPoly type: in
the results below `a` and `a†` stand for ã and ã†, and products are
normal-ordered with [ã, ã†] = 1. For unit-normalized states that relation
holds to every order; for intermediate normalization it holds up to the
first commutator defect (see tilde_exact_order).
"""

from __future__ import annotations

from typing import Optional

from ladderkit.algebra.operator_poly import OperatorPoly
from ladderkit.core.errors import SeriesError
from ladderkit.engine.perturbation import commutator_defect
from ladderkit.engine.series import OperatorSeries


def _require_unit_leading(s: OperatorSeries) -> None:
    if s[0] != OperatorPoly.annihilator():
        raise SeriesError(f"series inversion needs zeroth order a, got {s[0]}")


def invert_series(s: OperatorSeries) -> OperatorSeries:
    """
    t with s(t, t†) = ã up to order M.

    Fixed point t = ã − Σ_{l≥1} λ^l α_l(t, t†); each pass fixes one more
    order, so M passes are enough.
    """
    _require_unit_leading(s)
    order = s.order
    tilde_a = OperatorSeries.constant(OperatorPoly.annihilator(), order)
    t = tilde_a
    for _ in range(order):
        correction = OperatorSeries.zero(order)
        t_dag = t.dagger()
        for l in range(1, order + 1):
            if s[l].is_zero:
                continue
            correction = correction + OperatorSeries.substitute(s[l], t, t_dag).shifted(l, order)
        t = tilde_a - correction
    return t


def rewrite_in_tilde(O: OperatorPoly, alphas: OperatorSeries, order: Optional[int] = None) -> OperatorSeries:
    """O(a, a†) as a λ-series in ã, ã†."""
    if order is not None:
        alphas = alphas.truncate(order)
    t = invert_series(alphas)
    return OperatorSeries.substitute(O, t, t.dagger())


def tilde_exact_order(alphas: OperatorSeries) -> int:
    """
    Highest order through which the tilde-algebra canonicalization is exact.

    Reordering inside a λ^l (l ≥ 1) coefficient with [ã, ã†] = 1 + O(λ^d)
    is wrong from order l + d on, so results are exact through order d.
    """
    defect = commutator_defect(alphas)
    if defect is None:
        return alphas.order
    return min(alphas.order, defect)
