# ladderkit/engine/perturbation.py
"""
Rayleigh–Schrödinger theory in operator form.

For the oscillator the energy denominators are ħω(n − j), so the reduced
resolvent acting on a term a†^j a^k is the bar transform divided by ħω. That
makes every state correction level independent:

    |η_{n,(m)}⟩ = Ω_m |n⟩,   Ω_0 = 1
    Ω_m = (1/ħω) bar( V Ω_{m−1} − Σ_{l=1}^{m−1} Ω_{m−l} E_l ),  E_l = check(V Ω_{l−1})

and the ladder corrections follow from ã Ω = Ω a order by order:

    α_0 = a,   α_m = [Ω_m, a] − Σ_{l=1}^{m−1} α_l Ω_{m−l}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ladderkit.algebra.diagonal import DiagonalPoly, diagonal_as_npoly, level_amplitudes
from ladderkit.algebra.operator_poly import (
    OperatorPoly,
    bar,
    check,
    commutator,
    dagger,
    double_bar,
    require_hermitian,
)
from ladderkit.algebra.scalar import Scalar, ScalarSum, hbar_omega
from ladderkit.core.errors import SeriesError
from ladderkit.engine.series import OperatorSeries

NORMALIZATIONS = ("intermediate", "unit")


def _inv_hbar_omega() -> Scalar:
    return hbar_omega().inverse()


def _check_order(order: int) -> None:
    if order < 0:
        raise SeriesError(f"perturbative order must be non-negative, got {order}")


def _check_normalization(normalization: str) -> None:
    if normalization not in NORMALIZATIONS:
        raise SeriesError(f"unknown normalization {normalization!r}; use one of {', '.join(NORMALIZATIONS)}")


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class StateCorrectionOps:
    """omegas[m] = Ω_m with |η_{n,(m)}⟩ = Ω_m|n⁽⁰⁾⟩ for every level n."""

    omegas: Tuple[OperatorPoly, ...]
    normalization: str = "intermediate"

    @property
    def order(self) -> int:
        return len(self.omegas) - 1

    def __getitem__(self, m: int) -> OperatorPoly:
        return self.omegas[m]

    def __len__(self) -> int:
        return len(self.omegas)

    def as_series(self) -> OperatorSeries:
        return OperatorSeries(self.omegas)

    def amplitudes(self, m: int) -> Dict[int, DiagonalPoly]:
        """Shift -> amplitude polynomial of |η_{n,(m)}⟩ (see level_amplitudes)."""
        return level_amplitudes(self.omegas[m])

    def to_dict(self) -> Dict[str, Any]:
        return {"normalization": self.normalization, "omegas": [w.to_dict() for w in self.omegas]}


@dataclass(frozen=True)
class EnergySeries:
    """eps[m](n) = ε_{n,(m)}; eps[0] = ħω(n + ½)."""

    eps: Tuple[DiagonalPoly, ...]

    @property
    def order(self) -> int:
        return len(self.eps) - 1

    def __getitem__(self, m: int) -> DiagonalPoly:
        return self.eps[m]

    def __len__(self) -> int:
        return len(self.eps)

    @property
    def is_real(self) -> bool:
        return all(e.is_real for e in self.eps)

    def at_level(self, n: int) -> List[ScalarSum]:
        return [e.evaluate(n) for e in self.eps]

    def partial_sum(self, n: int, lam: float, units: Sequence[float] = (1.0, 1.0, 1.0)) -> float:
        return sum((e.evaluate_complex(n, *units) * lam ** m for m, e in enumerate(self.eps)), 0j).real

    def to_dict(self) -> List[Dict[str, Any]]:
        return [e.to_dict() for e in self.eps]


# ---------------------------------------------------------------------------
# Core recursions
# ---------------------------------------------------------------------------
def _intermediate_recursion(V: OperatorPoly, order: int) -> Tuple[List[OperatorPoly], List[OperatorPoly]]:
    """(Ω_0..Ω_M, E_0..E_M) with E_l = check(V Ω_{l−1}) as diagonal operators (E_0 unused)."""
    inv = _inv_hbar_omega()
    omegas: List[OperatorPoly] = [OperatorPoly.identity()]
    diag_ops: List[OperatorPoly] = [OperatorPoly.zero()]
    for m in range(1, order + 1):
        v_prev = V * omegas[m - 1]
        diag_ops.append(check(v_prev))
        source = v_prev
        for l in range(1, m):
            source = source - omegas[m - l] * diag_ops[l]
        omegas.append(bar(source).scale(inv))
    return omegas, diag_ops


def _norm_series(omegas: Sequence[OperatorPoly]) -> List[DiagonalPoly]:
    """Z_m(n) = Σ_{l+l'=m} ⟨η_l'|η_l⟩."""
    order = len(omegas) - 1
    daggers = [dagger(w) for w in omegas]
    out = []
    for m in range(order + 1):
        total = DiagonalPoly.zero()
        for l in range(m + 1):
            total = total + diagonal_as_npoly(check(daggers[m - l] * omegas[l]))
        out.append(total)
    return out


def _inverse_sqrt_series(z: Sequence[DiagonalPoly]) -> List[DiagonalPoly]:
    """Exact (1 + x)^(−1/2) for x = z − 1, truncated at the length of z."""
    order = len(z) - 1
    x = [DiagonalPoly.zero()] + list(z[1:])

    def mul(p: List[DiagonalPoly], q: List[DiagonalPoly]) -> List[DiagonalPoly]:
        return [sum((p[i] * q[m - i] for i in range(m + 1)), DiagonalPoly.zero()) for m in range(order + 1)]

    result = [DiagonalPoly.constant(1)] + [DiagonalPoly.zero()] * order
    term = [DiagonalPoly.constant(1)] + [DiagonalPoly.zero()] * order
    coeff = Fraction(1)
    for k in range(1, order + 1):
        coeff *= (Fraction(-1, 2) - (k - 1)) / k
        term = mul(term, x)
        result = [r + t * coeff for r, t in zip(result, term)]
    return result


def _unit_normalized(omegas: Sequence[OperatorPoly]) -> List[OperatorPoly]:
    """Ω_m for unit-norm states: Ω · Z(N)^(−1/2), right-multiplied since Z depends on the level."""
    scale = [s.to_operator() for s in _inverse_sqrt_series(_norm_series(omegas))]
    out = []
    for m in range(len(omegas)):
        total = OperatorPoly.zero()
        for l in range(m + 1):
            if omegas[l].is_zero or scale[m - l].is_zero:
                continue
            total = total + omegas[l] * scale[m - l]
        out.append(total)
    return out


def alphas_from_omegas(omegas: Sequence[OperatorPoly]) -> OperatorSeries:
    """Solve ã Ω = Ω a order by order (valid for any Ω with Ω_0 = 1)."""
    a = OperatorPoly.annihilator()
    alphas: List[OperatorPoly] = [a]
    for m in range(1, len(omegas)):
        alpha = commutator(omegas[m], a)
        for l in range(1, m):
            alpha = alpha - alphas[l] * omegas[m - l]
        alphas.append(alpha)
    return OperatorSeries(alphas)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------
def state_corrections(V: OperatorPoly, order: int, normalization: str = "intermediate") -> StateCorrectionOps:
    require_hermitian(V, "perturbation V")
    _check_order(order)
    _check_normalization(normalization)
    omegas, _ = _intermediate_recursion(V, order)
    if normalization == "unit":
        omegas = _unit_normalized(omegas)
    return StateCorrectionOps(tuple(omegas), normalization)


def energy_corrections(V: OperatorPoly, order: int) -> EnergySeries:
    require_hermitian(V, "perturbation V")
    _check_order(order)
    _, diag_ops = _intermediate_recursion(V, order)
    hw = hbar_omega()
    eps = [DiagonalPoly([hw * Fraction(1, 2), hw])]
    eps += [diagonal_as_npoly(e) for e in diag_ops[1:]]
    return EnergySeries(tuple(eps))


def alpha_corrections(V: OperatorPoly, order: int, normalization: str = "intermediate") -> OperatorSeries:
    return alphas_from_omegas(state_corrections(V, order, normalization).omegas)


def creation_corrections(alphas: OperatorSeries) -> OperatorSeries:
    return alphas.dagger()


def number_corrections(alphas: OperatorSeries) -> OperatorSeries:
    """Ñ = ã†ã truncated at the order of the α series."""
    return alphas.dagger() * alphas


def numbers_from_omegas(omegas: Sequence[OperatorPoly]) -> OperatorSeries:
    """Solve Ñ Ω = Ω N order by order, so Ñ|n⟩ = n|n⟩ on the perturbed levels."""
    n = OperatorPoly.number()
    nus: List[OperatorPoly] = [n]
    for m in range(1, len(omegas)):
        nu = commutator(omegas[m], n)
        for l in range(1, m):
            nu = nu - nus[l] * omegas[m - l]
        nus.append(nu)
    return OperatorSeries(nus)


def norm_corrections(states: StateCorrectionOps) -> List[DiagonalPoly]:
    return _norm_series(states.omegas)


def commutator_defect(alphas: OperatorSeries) -> Optional[int]:
    """First order m ≥ 1 with a nonzero λ^m coefficient in [ã, ã†] − 1, or None."""
    return alphas.commutator(alphas.dagger()).first_nonzero_order(start=1)


# ---------------------------------------------------------------------------
# Closed forms (independent evaluators used as cross-checks)
# ---------------------------------------------------------------------------
def alpha1_closed_form(V: OperatorPoly) -> OperatorPoly:
    """[V̄, a]/ħω"""
    return commutator(bar(V), OperatorPoly.annihilator()).scale(_inv_hbar_omega())


def alpha2_closed_form(V: OperatorPoly) -> OperatorPoly:
    """(1/ħω)² { [bar(V V̄), a] − [bar(bar V) V̌, a] − [V̄, a] V̄ }"""
    a = OperatorPoly.annihilator()
    v_bar, v_check = bar(V), check(V)
    inv = _inv_hbar_omega()
    body = (
        commutator(bar(V * v_bar), a)
        - commutator(double_bar(V) * v_check, a)
        - commutator(v_bar, a) * v_bar
    )
    return body.scale(inv * inv)


def alpha2_dagger_closed_form(V: OperatorPoly) -> OperatorPoly:
    """(1/ħω)² { −[bar(V V̄)†, a†] + [V̌ bar(bar V), a†] + V̄ [V̄, a†] }"""
    ad = OperatorPoly.creator()
    v_bar, v_check = bar(V), check(V)
    inv = _inv_hbar_omega()
    body = (
        -commutator(dagger(bar(V * v_bar)), ad)
        + commutator(v_check * double_bar(V), ad)
        + v_bar * commutator(v_bar, ad)
    )
    return body.scale(inv * inv)


def nu1_closed_form(V: OperatorPoly) -> OperatorPoly:
    """[V̄, N]/ħω"""
    return commutator(bar(V), OperatorPoly.number()).scale(_inv_hbar_omega())


def nu2_closed_form(V: OperatorPoly) -> OperatorPoly:
    """(1/ħω)² { ½V̄[V̄,N] − a†(½[V̄²,a] − [bar(VV̄),a] + [bar(bar V)V̌,a]) } + h.c."""
    a, ad, n = OperatorPoly.annihilator(), OperatorPoly.creator(), OperatorPoly.number()
    v_bar, v_check = bar(V), check(V)
    half = Fraction(1, 2)
    inner = (
        commutator(v_bar * v_bar, a).scale(half)
        - commutator(bar(V * v_bar), a)
        + commutator(double_bar(V) * v_check, a)
    )
    body = (v_bar * commutator(v_bar, n)).scale(half) - ad * inner
    inv = _inv_hbar_omega()
    return (body + dagger(body)).scale(inv * inv)


# ---------------------------------------------------------------------------
# Cached bundle for report commands
# ---------------------------------------------------------------------------
@dataclass
class LadderConstruction:
    """Everything the report commands need for one (V, M, normalization)."""

    V: OperatorPoly
    order: int
    normalization: str
    states: StateCorrectionOps
    energies: EnergySeries
    alphas: OperatorSeries
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, V: OperatorPoly, order: int, normalization: str = "intermediate") -> "LadderConstruction":
        require_hermitian(V, "perturbation V")
        _check_order(order)
        _check_normalization(normalization)
        omegas, diag_ops = _intermediate_recursion(V, order)
        hw = hbar_omega()
        eps = [DiagonalPoly([hw * Fraction(1, 2), hw])] + [diagonal_as_npoly(e) for e in diag_ops[1:]]
        if normalization == "unit":
            omegas = _unit_normalized(omegas)
        states = StateCorrectionOps(tuple(omegas), normalization)
        return cls(
            V=V,
            order=order,
            normalization=normalization,
            states=states,
            energies=EnergySeries(tuple(eps)),
            alphas=alphas_from_omegas(states.omegas),
        )

    @property
    def degree(self) -> int:
        return self.V.degree

    @property
    def creations(self) -> OperatorSeries:
        if "creations" not in self._cache:
            self._cache["creations"] = creation_corrections(self.alphas)
        return self._cache["creations"]

    @property
    def numbers(self) -> OperatorSeries:
        if "numbers" not in self._cache:
            self._cache["numbers"] = number_corrections(self.alphas)
        return self._cache["numbers"]

    @property
    def norms(self) -> List[DiagonalPoly]:
        if "norms" not in self._cache:
            self._cache["norms"] = norm_corrections(self.states)
        return self._cache["norms"]

    @property
    def defect_order(self) -> Optional[int]:
        if "defect" not in self._cache:
            self._cache["defect"] = commutator_defect(self.alphas)
        return self._cache["defect"]
