import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ladderkit.algebra import DiagonalPoly, OperatorPoly, Scalar, UnitMonomial, hbar_omega
from ladderkit.algebra.diagonal import amplitude_value
from ladderkit.core.errors import HermiticityError, SeriesError
from ladderkit.engine import (
    LadderConstruction,
    alpha_corrections,
    creation_corrections,
    energy_corrections,
    number_corrections,
    numbers_from_omegas,
    state_corrections,
)
from ladderkit.engine.perturbation import (
    alpha1_closed_form,
    alpha2_closed_form,
    alpha2_dagger_closed_form,
    commutator_defect,
    nu1_closed_form,
    nu2_closed_form,
)
from ladderkit.numeric.errata import alpha2_p4_printed

from strategies import hermitian_polys

a = OperatorPoly.annihilator()
ad = OperatorPoly.creator()
q = OperatorPoly.position()
p4 = OperatorPoly.momentum() ** 4

# 1/√(2ħmω³) and 1/(2ħmω³)
KAPPA = Scalar(re_s2=Fraction(1, 2), units=UnitMonomial(-1, -1, -3))
K = Scalar.of(Fraction(1, 2), UnitMonomial(-2, -2, -6))


def _poly(coeffs, units):
    return DiagonalPoly([Scalar.of(Fraction(c), units) for c in coeffs])


# ---------------------------------------------------------------------------
# V = q
# ---------------------------------------------------------------------------
def test_linear_potential_state_corrections():
    states = state_corrections(q, 2)
    assert states[0] == OperatorPoly.identity()
    assert states[1] == (a - ad).scale(KAPPA)
    assert states[2] == (a ** 2 + ad ** 2).scale(K * Fraction(1, 2))
    assert states.amplitudes(1) == {-1: DiagonalPoly.constant(KAPPA), 1: DiagonalPoly.constant(-KAPPA)}


def test_linear_potential_ladder_corrections():
    alphas = alpha_corrections(q, 2)
    assert alphas[0] == a
    assert alphas[1] == OperatorPoly.scalar(KAPPA)
    assert alphas[2] == a.scale(-K)


def test_linear_potential_energies():
    eps = energy_corrections(q, 2)
    hw = hbar_omega()
    assert eps[0] == DiagonalPoly([hw * Fraction(1, 2), hw])
    assert eps[1].is_zero
    assert eps[2] == _poly([Fraction(-1, 2)], UnitMonomial(0, -2, -4))
    assert eps.is_real


def test_linear_potential_norm_and_defect():
    construction = LadderConstruction.build(q, 2)
    assert construction.norms[0] == DiagonalPoly.constant(1)
    assert construction.norms[1].is_zero
    assert construction.norms[2] == DiagonalPoly([K, K * 2])
    # [ã, ã†] = 1 − λ²/(ħmω³) + …
    assert construction.defect_order == 2


def test_unit_normalization_restores_canonical_commutator():
    construction = LadderConstruction.build(q, 3, "unit")
    assert construction.defect_order is None
    assert construction.norms[2].is_zero


def test_creation_and_number_corrections_follow_from_alphas():
    construction = LadderConstruction.build(q, 3, "unit")
    alphas = construction.alphas
    assert creation_corrections(alphas) == alphas.dagger()
    numbers = number_corrections(alphas)
    assert numbers == construction.numbers
    assert numbers[0] == OperatorPoly.number()
    assert numbers[1] == ad * alphas[1] + alphas.dagger()[1] * a


# ---------------------------------------------------------------------------
# V = p⁴
# ---------------------------------------------------------------------------
def test_quartic_momentum_energies():
    eps = energy_corrections(p4, 2)
    assert eps[1] == _poly([Fraction(3, 4), Fraction(3, 2), Fraction(3, 2)], UnitMonomial(4, 4, 4))
    assert eps[2] == _poly([Fraction(-21, 8), Fraction(-59, 8), Fraction(-51, 8), Fraction(-34, 8)], UnitMonomial(6, 8, 6))
    assert eps[2].evaluate_complex(0) == pytest.approx(-2.625)


def test_quartic_momentum_first_order_annihilator():
    expected = OperatorPoly(
        {
            (3, 0): Scalar.of(Fraction(1, 4), UnitMonomial(2, 4, 2)),
            (2, 1): Scalar.of(Fraction(-3, 2), UnitMonomial(2, 4, 2)),
            (0, 3): Scalar.of(Fraction(1, 2), UnitMonomial(2, 4, 2)),
            (1, 0): Scalar.of(Fraction(-3, 2), UnitMonomial(2, 4, 2)),
        }
    )
    assert alpha_corrections(p4, 1)[1] == expected


def test_quartic_momentum_norm():
    norms = LadderConstruction.build(p4, 2).norms
    assert norms[2] == _poly([Fraction(c, 128) for c in (156, 422, 487, 130, 65)], UnitMonomial(4, 8, 4))
    assert norms[2].evaluate_complex(1) == pytest.approx(9.84375)


@pytest.mark.parametrize("V", [q, p4, q ** 3], ids=["q", "p4", "q3"])
def test_recursion_matches_closed_forms(V):
    construction = LadderConstruction.build(V, 2)
    assert construction.alphas[1] == alpha1_closed_form(V)
    assert construction.alphas[2] == alpha2_closed_form(V)
    assert construction.creations[2] == alpha2_dagger_closed_form(V)
    assert construction.numbers[1] == nu1_closed_form(V)
    assert construction.numbers[2] == nu2_closed_form(V)


# ---------------------------------------------------------------------------
# General identities
# ---------------------------------------------------------------------------
@given(hermitian_polys())
@settings(max_examples=15, deadline=None)
def test_unit_normalized_ladder_is_canonical(V):
    construction = LadderConstruction.build(V, 2, "unit")
    assert construction.defect_order is None
    assert numbers_from_omegas(construction.states.omegas) == construction.numbers


@given(hermitian_polys())
@settings(max_examples=15, deadline=None)
def test_energy_corrections_are_real(V):
    assert energy_corrections(V, 2).is_real


def test_order_zero_is_the_free_oscillator():
    construction = LadderConstruction.build(q, 0)
    assert construction.alphas.coeffs == (a,)
    assert construction.defect_order is None
    assert commutator_defect(construction.alphas) is None


def test_non_hermitian_perturbation_is_rejected():
    with pytest.raises(HermiticityError):
        state_corrections(a, 2)
    with pytest.raises(HermiticityError):
        LadderConstruction.build(a + ad * 2, 1)


def test_bad_order_and_normalization():
    with pytest.raises(SeriesError):
        energy_corrections(q, -1)
    with pytest.raises(SeriesError):
        state_corrections(q, 1, "symmetric")


@given(hermitian_polys())
@settings(max_examples=10, deadline=None)
def test_corrected_number_operator_lowers_with_the_ladder(V):
    construction = LadderConstruction.build(V, 2, "unit")
    numbers, alphas = construction.numbers, construction.alphas
    assert all(nu.is_hermitian() for nu in numbers)
    assert numbers.commutator(alphas) == -alphas


def test_quartic_momentum_second_order_annihilator_matches_printed_form():
    assert LadderConstruction.build(p4, 2).alphas[2] == alpha2_p4_printed()


def test_quartic_momentum_first_order_state_amplitudes():
    # ⟨n+e|η_{n,(1)}⟩ over the √ prefactor, in units of ħm²ω
    amplitudes = state_corrections(p4, 1).amplitudes(1)
    units = UnitMonomial(2, 4, 2)
    assert amplitudes == {
        -4: _poly([Fraction(1, 16)], units),
        -2: _poly([Fraction(1, 4), Fraction(-1, 2)], units),
        2: _poly([Fraction(3, 4), Fraction(1, 2)], units),
        4: _poly([Fraction(-1, 16)], units),
    }
    assert amplitude_value(amplitudes[2], 1, 2) == pytest.approx(1.25 * math.sqrt(6))
    assert amplitude_value(amplitudes[-4], 3, -4) == pytest.approx(0.0)


@pytest.mark.parametrize("V", [q, p4], ids=["q", "p4"])
def test_fourth_order_unit_ladder_stays_canonical(V):
    construction = LadderConstruction.build(V, 4, "unit")
    assert construction.defect_order is None
    assert commutator_defect(construction.alphas) is None
    assert numbers_from_omegas(construction.states.omegas) == construction.numbers
    assert construction.numbers.commutator(construction.alphas) == -construction.alphas
