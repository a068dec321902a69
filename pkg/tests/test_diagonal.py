from hypothesis import given, settings
from hypothesis import strategies as st

from ladderkit.algebra import DiagonalPoly, OperatorPoly, diagonal_as_npoly, level_amplitudes
from ladderkit.algebra.diagonal import amplitude_prefactor, stirling2
from ladderkit.algebra.scalar import position_scale

N = OperatorPoly.number()


def test_stirling_numbers():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]


def test_number_powers_in_normal_order():
    n2 = DiagonalPoly([0, 0, 1])
    assert n2.to_operator() == OperatorPoly.monomial(2, 2) + OperatorPoly.monomial(1, 1)
    assert diagonal_as_npoly(N * N) == n2


@given(st.lists(st.integers(-6, 6), max_size=5))
@settings(max_examples=40, deadline=None)
def test_operator_round_trip(coeffs):
    poly = DiagonalPoly(coeffs)
    assert diagonal_as_npoly(poly.to_operator()) == poly


def test_shift_and_evaluate():
    n2 = DiagonalPoly([0, 0, 1])
    assert n2.shift(1) == DiagonalPoly([1, 2, 1])
    assert n2.shift(-2).evaluate(5) == 9
    assert DiagonalPoly.rising(2).evaluate(3) == 20
    assert DiagonalPoly.falling(3).evaluate(2) == 0


def test_level_amplitudes_of_position():
    c = position_scale()
    assert level_amplitudes(OperatorPoly.position()) == {-1: DiagonalPoly.constant(c), 1: DiagonalPoly.constant(c)}


def test_level_amplitudes_mixed_word():
    # a†a²|n⟩ = √n·(n−1)|n−1⟩
    amps = level_amplitudes(OperatorPoly.monomial(1, 2))
    assert amps == {-1: DiagonalPoly([-1, 1])}
    assert amplitude_prefactor(4, -1) == 2.0
    assert amplitude_prefactor(1, -2) == 0.0


def test_text():
    assert str(DiagonalPoly([1, 2, 1])) == "n^2 + 2·n + 1"
    assert str(DiagonalPoly()) == "0"
