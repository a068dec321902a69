from fractions import Fraction

import pytest

from ladderkit.algebra import DiagonalPoly, OperatorPoly, Scalar, UnitMonomial
from ladderkit.core.errors import SeriesError
from ladderkit.engine import LadderConstruction, expectation
from ladderkit.engine.expectation import divide_series, tilde_expectation

q = OperatorPoly.position()
p = OperatorPoly.momentum()
p4 = p ** 4


def test_mean_position_under_linear_force():
    result = expectation(q, q, 2)
    assert result.ratio[0].is_zero
    assert result.ratio[1] == DiagonalPoly.constant(Scalar.of(-1, UnitMonomial(0, -2, -4)))
    assert result.ratio[2].is_zero
    assert result.order == 2


def test_mean_momentum_vanishes():
    for V in (q, p4):
        result = expectation(V, p, 2)
        assert all(r.is_zero for r in result.ratio)


def test_norm_series_of_quartic_momentum():
    result = expectation(p4, OperatorPoly.identity(), 2)
    assert result.norm[0] == DiagonalPoly.constant(1)
    assert result.norm[1].is_zero
    expected = DiagonalPoly(
        [Scalar.of(Fraction(c, 128), UnitMonomial(4, 8, 4)) for c in (156, 422, 487, 130, 65)]
    )
    assert result.norm[2] == expected
    assert all(r == DiagonalPoly.constant(1) or r.is_zero for r in result.ratio)


def test_unit_normalized_levels_have_unit_norm():
    result = expectation(p4, OperatorPoly.identity(), 2, normalization="unit")
    assert result.norm[0] == DiagonalPoly.constant(1)
    assert result.norm[1].is_zero and result.norm[2].is_zero


def test_corrected_number_operator_counts_levels():
    construction = LadderConstruction.build(q, 2, "unit")
    values = tilde_expectation(construction.states, construction.numbers, 2)
    assert values == [DiagonalPoly.n(), DiagonalPoly.zero(), DiagonalPoly.zero()]


def test_divide_series_needs_unit_leading_norm():
    with pytest.raises(SeriesError):
        divide_series([DiagonalPoly.n()], [DiagonalPoly.constant(2)])


def test_to_dict_shape():
    data = expectation(q, q, 1).to_dict()
    assert set(data) == {"value", "norm", "ratio"}
    assert len(data["ratio"]) == 2


def test_mean_position_vanishes_under_quartic_momentum():
    result = expectation(p4, q, 2)
    assert result.ratio[1].is_zero
    assert result.ratio[2].is_zero
    assert all(v.is_zero for v in result.value)
