from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ladderkit.algebra import (
    HBAR,
    MASS,
    OMEGA,
    FloatScalar,
    Scalar,
    ScalarSum,
    UnitMonomial,
)
from ladderkit.algebra.scalar import position_scale, scalar_conj, scalar_mul
from ladderkit.core.errors import UnitMismatchError

from strategies import scalars

nonzero = scalars().filter(lambda s: not s.is_zero)


def test_basis_identities():
    assert Scalar.sqrt2() * Scalar.sqrt2() == Scalar.of(2)
    assert Scalar.i() * Scalar.i() == Scalar.of(-1)
    assert (Scalar.i() * Scalar.sqrt2()).parts() == (0, 0, 0, 1)


def test_units_multiply_and_cancel():
    hw = Scalar.unit(HBAR * OMEGA)
    assert (hw * hw.inverse()) == Scalar.one()
    assert Scalar.of(1, HBAR) / Scalar.of(2, HBAR) == Scalar.of(Fraction(1, 2))
    assert (HBAR * MASS * OMEGA).inverse() == UnitMonomial(-2, -2, -2)


def test_adding_different_units_raises():
    with pytest.raises(UnitMismatchError):
        Scalar.of(1, HBAR) + Scalar.of(1)


def test_zero_adds_across_units():
    assert Scalar.of(3, MASS) + Scalar.zero() == Scalar.of(3, MASS)


@given(scalars(), scalars(), scalars())
@settings(max_examples=50, deadline=None)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(scalars(with_units=True), scalars(with_units=True))
@settings(max_examples=50, deadline=None)
def test_conjugation_is_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x


@given(nonzero)
@settings(max_examples=50, deadline=None)
def test_inverse(x):
    assert x * x.inverse() == Scalar.one()


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Scalar.zero().inverse()


def test_to_complex_uses_half_integer_units():
    scale = position_scale()
    assert scale.to_complex() == pytest.approx(2 ** 0.5 / 2)
    assert scale.to_complex(hbar=4.0, mass=1.0, omega=1.0) == pytest.approx(2 ** 0.5)


def test_text_rendering():
    assert str(position_scale()) == "(1/2)√2 ħ^(1/2) m^(-1/2) ω^(-1/2)"
    assert str(Scalar.of(-1, HBAR * OMEGA)) == "-ħ ω"
    assert str(Scalar(re=1, im=-2)) == "1 - 2i"


def test_dict_round_trip():
    x = Scalar(Fraction(1, 3), 2, Fraction(-5, 7), 0, UnitMonomial(1, -3, 2))
    assert Scalar.from_dict(x.to_dict()) == x


def test_float_promotion():
    product = Scalar.of(2, HBAR) * FloatScalar(0.25)
    assert isinstance(product, FloatScalar)
    assert product.value == pytest.approx(0.5)
    assert product.units == HBAR


def test_scalar_sum_keeps_units_apart_and_collapses():
    s = ScalarSum([Scalar.of(1, HBAR), Scalar.of(2), Scalar.of(3, HBAR)])
    assert len(s) == 2
    assert s.term(HBAR) == Scalar.of(4, HBAR)
    assert s.natural() == ScalarSum.of(6)
    assert (s - s).is_zero


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_scalar_sum_single(a, b):
    s = ScalarSum.of(Scalar.of(a, MASS)) + ScalarSum.of(Scalar.of(b, MASS))
    assert s.single() == (Scalar.of(a + b, MASS) if a + b else Scalar.zero())


def test_scalar_mul_and_conj():
    assert scalar_mul(Scalar.i(), Scalar.i()) == Scalar.of(-1)
    assert scalar_mul(Scalar.sqrt2(), Scalar.sqrt2()) == Scalar.of(2)
    assert scalar_conj(Scalar.i()) == -Scalar.i()
    assert scalar_conj(Scalar.sqrt2()) == Scalar.sqrt2()
