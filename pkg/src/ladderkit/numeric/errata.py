# ladderkit/numeric/errata.py
"""
Numeric adjudication of published closed forms that disagree with each other
or with the engine.

Every item compares a small set of candidate forms with a vector produced by
the oracle (literal RS sums, or the α matrices rebuilt from them; natural
units). A candidate is accepted when it matches to `tol`; the item has a
winner only when exactly one candidate is accepted. The engine's own result
is measured the same way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ladderkit.algebra.diagonal import falling_factorial, rising_factorial
from ladderkit.algebra.operator_poly import OperatorPoly, bar
from ladderkit.algebra.scalar import Scalar, UnitMonomial
from ladderkit.engine.expectation import expectation
from ladderkit.engine.inversion import rewrite_in_tilde
from ladderkit.engine.perturbation import LadderConstruction
from ladderkit.numeric.fock import UnitValues, to_matrix
from ladderkit.numeric.verify import alpha_oracle_matrix, perturbed_levels

NATURAL = UnitValues()
DEFAULT_DIM = 64
DEFAULT_LEVELS = (0, 1, 2, 3, 4, 5)


@dataclass
class ErrataItem:
    key: str
    title: str
    residuals: Dict[str, float]
    winner: Optional[str]
    engine_residual: float
    engine_agrees: bool
    tolerance: float
    notes: str = ""
    candidates: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "key": self.key,
            "title": self.title,
            "candidates": list(self.candidates),
            "residuals": dict(self.residuals),
            "winner": self.winner,
            "engine_residual": self.engine_residual,
            "engine_agrees": self.engine_agrees,
            "tolerance": self.tolerance,
            "notes": self.notes,
        }


def adjudicate(
    key: str,
    title: str,
    candidates: Dict[str, np.ndarray],
    oracle: np.ndarray,
    engine: np.ndarray,
    tol: float = 1e-8,
    notes: str = "",
) -> ErrataItem:
    scale = max(1.0, float(np.max(np.abs(oracle), initial=0.0)))

    def distance(v: np.ndarray) -> float:
        return float(np.max(np.abs(np.asarray(v) - oracle), initial=0.0)) / scale

    residuals = {name: distance(vec) for name, vec in candidates.items()}
    accepted = [name for name, res in residuals.items() if res <= tol]
    winner = accepted[0] if len(accepted) == 1 else None
    engine_residual = distance(engine)
    agrees = winner is not None and engine_residual <= tol
    return ErrataItem(key, title, residuals, winner, engine_residual, agrees, tol, notes, list(candidates))


# ---------------------------------------------------------------------------
# Shared pieces
# ---------------------------------------------------------------------------
def _p4() -> OperatorPoly:
    return OperatorPoly.momentum() ** 4


def _q() -> OperatorPoly:
    return OperatorPoly.position()


def _sandwich(left: OperatorPoly, middle: OperatorPoly, right: OperatorPoly) -> OperatorPoly:
    return left * middle * right


def _n_poly(coeffs: Sequence[Any]) -> OperatorPoly:
    """Σ_k coeffs[k]·N^k"""
    number = OperatorPoly.number()
    total = OperatorPoly.zero()
    power = OperatorPoly.identity()
    for c in coeffs:
        total = total + power.scale(Fraction(c))
        power = power * number
    return total


def _beta4() -> Scalar:
    """(ħmω/2)²"""
    return Scalar.of(Fraction(1, 4), UnitMonomial(4, 4, 4))


def _columns(matrix: np.ndarray, levels: Sequence[int]) -> np.ndarray:
    return np.concatenate([matrix[:, n] for n in levels])


# ---------------------------------------------------------------------------
# V̄ for p⁴: coefficient of a†(2N+1)a†
# ---------------------------------------------------------------------------
def vbar_candidate(coefficient: int) -> OperatorPoly:
    """(ħmω/2)²[a⁴/4 − a(2N+1)a + c·a†(2N+1)a† − a†⁴/4]"""
    a, ad = OperatorPoly.annihilator(), OperatorPoly.creator()
    two_n_plus_one = _n_poly([1, 2])
    body = (
        (a ** 4).scale(Fraction(1, 4))
        - _sandwich(a, two_n_plus_one, a)
        + _sandwich(ad, two_n_plus_one, ad).scale(coefficient)
        - (ad ** 4).scale(Fraction(1, 4))
    )
    return body.scale(_beta4())


def vbar_coefficient_item(dim: int = DEFAULT_DIM, levels: Sequence[int] = DEFAULT_LEVELS, tol: float = 1e-8) -> ErrataItem:
    """First-order states are V̄|n⟩/ħω, so each candidate V̄ predicts η₍₁₎ directly."""
    V = _p4()
    rs = perturbed_levels(V, 1, levels, dim, NATURAL)
    oracle = np.concatenate([rs[n].state_series[1] for n in levels])
    hw = NATURAL.hbar * NATURAL.omega

    def predicted(op: OperatorPoly) -> np.ndarray:
        return _columns(to_matrix(op, dim, NATURAL).entries, levels) / hw

    candidates = {f"coefficient {c}": predicted(vbar_candidate(c)) for c in (1, 2)}
    return adjudicate(
        "vbar_p4",
        "V-bar for p^4: coefficient of a†(2N+1)a†",
        candidates,
        oracle,
        predicted(bar(V)),
        tol,
        "the second-order section prints 2, the first-order section prints 1",
    )


# ---------------------------------------------------------------------------
# Second-order mean position for V = q
# ---------------------------------------------------------------------------
def _oracle_ratio_series(levels: Dict[int, Any], observable: np.ndarray, order: int) -> Dict[int, List[complex]]:
    """λ-coefficients of ⟨n|O|n⟩/⟨n|n⟩ from numeric state series."""
    out = {}
    for n, level in levels.items():
        etas = level.state_series
        value = [sum(np.vdot(etas[t - l], observable @ etas[l]) for l in range(t + 1)) for t in range(order + 1)]
        norm = [sum(np.vdot(etas[t - l], etas[l]) for l in range(t + 1)) for t in range(order + 1)]
        ratio: List[complex] = []
        for t in range(order + 1):
            r = value[t]
            for l in range(1, t + 1):
                r -= norm[l] * ratio[t - l]
            ratio.append(r)
        out[n] = ratio
    return out


def mean_position_item(dim: int = DEFAULT_DIM, levels: Sequence[int] = DEFAULT_LEVELS, tol: float = 1e-8) -> ErrataItem:
    V = _q()
    order = 2
    rs = perturbed_levels(V, order, levels, dim, NATURAL)
    q_mat = to_matrix(_q(), dim, NATURAL).entries
    ratios = _oracle_ratio_series(rs, q_mat, order)
    oracle = np.concatenate([np.array(ratios[n]) for n in levels])

    mass, omega = NATURAL.mass, NATURAL.omega
    shift = -1.0 / (mass * omega ** 2)

    def constant_shift(value: float) -> np.ndarray:
        return np.concatenate([np.array([0.0, value, 0.0]) for _ in levels])

    candidates = {
        "-lambda/(m omega^2)": constant_shift(shift),
        "-lambda/(2 m omega^2)": constant_shift(shift / 2),
    }
    result = expectation(V, _q(), order)
    engine = np.concatenate(
        [np.array([p.evaluate_complex(n, *NATURAL.as_tuple()) for p in result.ratio]) for n in levels]
    )
    return adjudicate(
        "mean_position_q",
        "normalized <q> through second order for V = q",
        candidates,
        oracle,
        engine,
        tol,
        "the second-order rewrite of q prints the constant -lambda/(2 m omega^2)",
    )


# ---------------------------------------------------------------------------
# q in terms of the corrected ladder operators, V = q
# ---------------------------------------------------------------------------
MatrixSeries = List[np.ndarray]


def _series_product(x: MatrixSeries, y: MatrixSeries) -> MatrixSeries:
    order = min(len(x), len(y)) - 1
    return [sum(x[i] @ y[t - i] for i in range(t + 1)) for t in range(order + 1)]


def substitute_matrices(poly: OperatorPoly, a_series: MatrixSeries, ad_series: MatrixSeries) -> MatrixSeries:
    """Σ c·(ã†)^j (ã)^k as a λ-series of matrices, for the terms c·a†^j a^k of poly."""
    order = len(a_series) - 1
    dim = a_series[0].shape[0]
    identity = [np.eye(dim, dtype=complex)] + [np.zeros((dim, dim), dtype=complex)] * order
    total = [np.zeros((dim, dim), dtype=complex) for _ in range(order + 1)]
    for (j, k), c in poly.items():
        term = identity
        for _ in range(j):
            term = _series_product(term, ad_series)
        for _ in range(k):
            term = _series_product(term, a_series)
        value = c.to_complex(*NATURAL.as_tuple())
        total = [t + value * s for t, s in zip(total, term)]
    return total


def tilde_series_matrix(series: Sequence[OperatorPoly], a_series: MatrixSeries, ad_series: MatrixSeries) -> MatrixSeries:
    """Σ_k λ^k series[k](ã, ã†), truncated at the order of ã."""
    order = len(a_series) - 1
    dim = a_series[0].shape[0]
    total = [np.zeros((dim, dim), dtype=complex) for _ in range(order + 1)]
    for k, poly in enumerate(series[: order + 1]):
        if poly.is_zero:
            continue
        part = substitute_matrices(poly, a_series, ad_series)
        for t in range(k, order + 1):
            total[t] = total[t] + part[t - k]
    return total


def q_rewrite_candidates() -> Dict[str, List[OperatorPoly]]:
    """q = Σ λ^k C_k(ã, ã†) as printed and as derived; C_k written in a, a† for ã, ã†."""
    q = _q()
    one = OperatorPoly.identity()
    inv_m_w2 = Scalar.of(1, UnitMonomial(0, -2, -4))
    printed_second = Scalar.of(Fraction(1, 4), UnitMonomial(-1, -3, -7)) * Scalar.sqrt2()
    derived_second = Scalar.of(Fraction(1, 2), UnitMonomial(-2, -2, -6))
    return {
        "printed": [q, one.scale(inv_m_w2 * Fraction(-1, 2)), q.scale(printed_second)],
        "derived": [q, one.scale(-inv_m_w2), q.scale(derived_second)],
    }


def q_rewrite_item(dim: int = DEFAULT_DIM, block: int = 8, tol: float = 1e-8) -> ErrataItem:
    """
    ã and ã† are taken from the oracle's α matrices (not from the engine), the
    candidate series is composed numerically and compared with q on a low block.
    """
    V = _q()
    order = 2
    oracle_mats, usable = alpha_oracle_matrix(V, order, dim, NATURAL)
    if block + 2 * order + 2 > usable:
        block = max(1, usable - 2 * order - 2)
    a_series = [m.entries for m in oracle_mats]
    ad_series = [m.conj().T for m in a_series]

    def flatten(series: MatrixSeries) -> np.ndarray:
        return np.concatenate([s[:block, :block].ravel() for s in series])

    q_mat = to_matrix(_q(), dim, NATURAL).entries
    oracle = flatten([q_mat] + [np.zeros_like(q_mat)] * order)
    candidates = {
        name: flatten(tilde_series_matrix(series, a_series, ad_series))
        for name, series in q_rewrite_candidates().items()
    }
    construction = LadderConstruction.build(V, order)
    engine_series = rewrite_in_tilde(_q(), construction.alphas, order)
    return adjudicate(
        "q_rewrite_q",
        "q in terms of the corrected ladder operators for V = q",
        candidates,
        oracle,
        flatten(tilde_series_matrix(list(engine_series.coeffs), a_series, ad_series)),
        tol,
        "printed: -lambda/(2 m omega^2) and lambda^2/sqrt(8 hbar m^3 omega^7)",
    )


# ---------------------------------------------------------------------------
# α₍₂₎ for p⁴
# ---------------------------------------------------------------------------
def alpha2_p4_printed() -> OperatorPoly:
    """(ħ²m⁴ω²/16)[9a⁵ − 72a²Na − ½a(65/2N³ − 27N² + 211/2N + 9) + 18(7N²+2)a† − 9a†Na†² − 2a†⁵]"""
    a, ad, number = OperatorPoly.annihilator(), OperatorPoly.creator(), OperatorPoly.number()
    body = (
        (a ** 5).scale(9)
        - (a ** 2 * number * a).scale(72)
        - (a * _n_poly([9, Fraction(211, 2), -27, Fraction(65, 2)])).scale(Fraction(1, 2))
        + (_n_poly([2, 0, 7]) * ad).scale(18)
        - (ad * number * ad ** 2).scale(9)
        - (ad ** 5).scale(2)
    )
    return body.scale(Scalar.of(Fraction(1, 16), UnitMonomial(4, 8, 4)))


def alpha2_display_item(dim: int = DEFAULT_DIM, tol: float = 1e-8) -> ErrataItem:
    V = _p4()
    order = 2
    oracle_mats, usable = alpha_oracle_matrix(V, order, dim, NATURAL)
    cols = list(range(usable + 1))
    oracle = _columns(oracle_mats[2].entries, cols)
    construction = LadderConstruction.build(V, order)
    return adjudicate(
        "alpha2_p4",
        "second-order annihilator correction for p^4",
        {"printed": _columns(to_matrix(alpha2_p4_printed(), dim, NATURAL).entries, cols)},
        oracle,
        _columns(to_matrix(construction.alphas[2], dim, NATURAL).entries, cols),
        tol,
    )


# ---------------------------------------------------------------------------
# η₍₂₎ amplitudes for p⁴
# ---------------------------------------------------------------------------
AmplitudeRow = Tuple[int, Callable[[int], float], Callable[[int], float]]


def _sqrt_falling(k: int) -> Callable[[int], float]:
    return lambda n: math.sqrt(falling_factorial(n, k)) if n >= k else 0.0


def _sqrt_rising(start: int, k: int) -> Callable[[int], float]:
    return lambda n: math.sqrt(rising_factorial(n + start, k))


def eta2_p4_rows(printed: bool) -> List[AmplitudeRow]:
    """(shift, prefactor(n), polynomial(n)) in units of ħ²m⁴ω²/16."""
    sign = -1.0 if printed else 1.0
    return [
        (-8, _sqrt_falling(8), lambda n: 1 / 32),
        (-6, _sqrt_falling(6), lambda n: -sign * 0.5 * (n - 11 / 6)),
        (-4, _sqrt_falling(4), lambda n: 2 * n ** 2 - 9 * n + 7),
        (-2, _sqrt_falling(2), lambda n: sign * 0.25 * (2 * n ** 3 + 129 * n ** 2 - 107 * n + 66)),
        (2, _sqrt_rising(2 if printed else 1, 2), lambda n: sign * 0.25 * (2 * n ** 3 - 123 * n ** 2 - 359 * n - 300)),
        (4, _sqrt_rising(1, 4), lambda n: 2 * n ** 2 + 13 * n + 18),
        (6, _sqrt_rising(1, 6), lambda n: -sign * 0.5 * (n + 17 / 6)),
        (8, _sqrt_rising(0 if printed else 1, 8), lambda n: 1 / 32),
    ]


def eta2_vector(rows: Sequence[AmplitudeRow], n: int, dim: int, scale: float) -> np.ndarray:
    out = np.zeros(dim, dtype=complex)
    for shift, prefactor, poly in rows:
        target = n + shift
        if 0 <= target < dim:
            out[target] += scale * prefactor(n) * poly(n)
    return out


def eta2_display_item(dim: int = DEFAULT_DIM, levels: Sequence[int] = (0, 1, 2, 3, 4, 6, 9), tol: float = 1e-8) -> ErrataItem:
    V = _p4()
    order = 2
    rs = perturbed_levels(V, order, levels, dim, NATURAL)
    oracle = np.concatenate([rs[n].state_series[2] for n in levels])
    unit = NATURAL.hbar ** 2 * NATURAL.mass ** 4 * NATURAL.omega ** 2 / 16
    construction = LadderConstruction.build(V, order)
    omega2 = to_matrix(construction.states[2], dim, NATURAL).entries
    candidates = {
        name: np.concatenate([eta2_vector(eta2_p4_rows(printed), n, dim, unit) for n in levels])
        for name, printed in (("printed", True), ("corrected", False))
    }
    return adjudicate(
        "eta2_p4",
        "second-order state correction amplitudes for p^4",
        candidates,
        oracle,
        _columns(omega2, levels),
        tol,
        "corrected: signs of the n-6, n-2, n+2 and n+6 rows flipped; prefactors (n+1)^(2, rising) and (n+1)^(8, rising)",
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------
ITEMS: Dict[str, Callable[[], ErrataItem]] = {
    "vbar_p4": vbar_coefficient_item,
    "alpha2_p4": alpha2_display_item,
    "eta2_p4": eta2_display_item,
    "mean_position_q": mean_position_item,
    "q_rewrite_q": q_rewrite_item,
}


def items_for(V: OperatorPoly) -> List[str]:
    """Errata keys that concern V (the two worked examples)."""
    if V == _p4():
        return ["vbar_p4", "alpha2_p4", "eta2_p4"]
    if V == _q():
        return ["mean_position_q", "q_rewrite_q"]
    return []


def run_errata(keys: Optional[Sequence[str]] = None) -> List[ErrataItem]:
    selected = list(ITEMS) if keys is None else list(keys)
    unknown = [k for k in selected if k not in ITEMS]
    if unknown:
        raise KeyError(f"unknown errata item(s): {', '.join(unknown)}")
    return [ITEMS[k]() for k in selected]
