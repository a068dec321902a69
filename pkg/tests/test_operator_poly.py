from fractions import Fraction

import pytest
from hypothesis import given, settings

from ladderkit.algebra import (
    HBAR,
    OperatorPoly,
    Scalar,
    bar,
    check,
    commutator,
    normal_order_product,
    dagger,
    require_hermitian,
)
from ladderkit.algebra.scalar import position_scale
from ladderkit.core.errors import HermiticityError

from strategies import hermitian_polys, operator_polys

a = OperatorPoly.annihilator()
ad = OperatorPoly.creator()
N = OperatorPoly.number()
q = OperatorPoly.position()
p = OperatorPoly.momentum()
one = OperatorPoly.identity()


def test_canonical_commutation():
    assert commutator(a, ad) == one
    assert a * ad == N + one


def test_position_momentum_commutator_is_i_hbar():
    assert q * p - p * q == OperatorPoly.scalar(Scalar(im=1, units=HBAR))


def test_normal_ordering_of_words():
    assert a * ad * a == OperatorPoly.monomial(1, 2) + a
    assert (a ** 2) * (ad ** 2) == OperatorPoly.monomial(2, 2) + OperatorPoly.monomial(1, 1, 4) + 2


def test_powers_and_degree():
    assert (q ** 4).degree == 4
    assert q ** 0 == one
    with pytest.raises(ValueError):
        q ** -1


def test_bar_divides_by_level_shift():
    assert bar(a) == a
    assert bar(ad ** 2) == (ad ** 2).scale(Fraction(-1, 2))
    assert bar(N).is_zero
    assert bar(OperatorPoly.monomial(1, 4, 6)) == OperatorPoly.monomial(1, 4, 2)


def test_check_keeps_balanced_terms():
    c2 = position_scale() * position_scale()
    assert check(q * q) == (N.scale(2) + one).scale(c2)


def test_excess_parts_of_position():
    parts = q.excess_parts()
    assert sorted(parts) == [-1, 1]
    assert parts[-1] == a.scale(position_scale())


def test_hermiticity_gate():
    assert require_hermitian(q * p + p * q) == q * p + p * q
    assert require_hermitian(p ** 4).is_hermitian()
    bad = q + p.scale(Scalar.i())
    with pytest.raises(HermiticityError) as info:
        require_hermitian(bad, "V")
    assert info.value.residue == p.scale(Scalar(im=2))
    assert info.value.to_dict()["kind"] == "hermiticity"


def test_text_rendering():
    assert str(N) == "a†a"
    assert str(OperatorPoly.monomial(2, 1, 3)) == "3·a†^2a"
    assert str(ad - a) == "-a + a†"
    assert str(OperatorPoly.zero()) == "0"


def test_dict_round_trip():
    x = q ** 3 + p.scale(Fraction(1, 3))
    assert OperatorPoly.from_dict(x.to_dict()) == x


def test_natural_units_collapse():
    assert q.natural() == (a + ad).scale(Scalar(re_s2=Fraction(1, 2)))


@given(operator_polys(), operator_polys())
@settings(max_examples=30, deadline=None)
def test_dagger_is_an_anti_automorphism(x, y):
    assert dagger(x * y) == dagger(y) * dagger(x)
    assert dagger(dagger(x)) == x


@given(operator_polys(max_degree=2), operator_polys(max_degree=2), operator_polys(max_degree=2))
@settings(max_examples=20, deadline=None)
def test_product_is_associative_and_distributive(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(operator_polys(), operator_polys())
@settings(max_examples=30, deadline=None)
def test_commutator_is_antisymmetric(x, y):
    assert commutator(x, y) == -commutator(y, x)


@given(hermitian_polys())
@settings(max_examples=30, deadline=None)
def test_bar_and_check_split_hermitian_operators(V):
    assert check(V).is_hermitian()
    assert dagger(bar(V)) == -bar(V)


def test_normal_order_product_moves_annihilators_right():
    assert normal_order_product(a, ad) == N + one
    assert normal_order_product(a ** 2, ad ** 2) == ad ** 2 * a ** 2 + N.scale(4) + one.scale(2)
    assert normal_order_product(ad, a) == ad * a
