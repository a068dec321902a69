import math

import numpy as np
import pytest

from ladderkit.algebra import OperatorPoly
from ladderkit.core.errors import CutoffMarginError
from ladderkit.numeric import rs_sums, to_matrix
from ladderkit.numeric.rs_sums import margin_ok

q = OperatorPoly.position()
p4 = OperatorPoly.momentum() ** 4


def test_linear_force_level():
    level = rs_sums(to_matrix(q, 30), 2, 2)
    np.testing.assert_allclose(level.energy_series, [2.5, 0.0, -0.5], atol=1e-12)
    eta1 = level.state_series[1]
    assert eta1[1] == pytest.approx(1.0)
    assert eta1[3] == pytest.approx(-math.sqrt(1.5))
    np.testing.assert_allclose(level.norm_series().real, [1.0, 0.0, 2.5], atol=1e-12)


@pytest.mark.parametrize("n, eps1, eps2", [(0, 0.75, -2.625), (1, 3.75, -20.625)])
def test_quartic_momentum_levels(n, eps1, eps2):
    level = rs_sums(to_matrix(p4, 40), 2, n, degree=4)
    np.testing.assert_allclose(level.energy_series, [n + 0.5, eps1, eps2], atol=1e-10)


def test_normalized_level_has_unit_norm():
    level = rs_sums(to_matrix(p4, 40), 2, 1).normalized()
    np.testing.assert_allclose(level.norm_series(), [1.0, 0.0, 0.0], atol=1e-10)


def test_partial_sums():
    level = rs_sums(to_matrix(q, 30), 2, 0)
    assert level.energy_at(0.1) == pytest.approx(0.5 - 0.005)
    np.testing.assert_allclose(level.state_at(0.0), np.eye(30)[0])


def test_cutoff_margin():
    assert margin_ok(2, 2, 4, 14)
    assert not margin_ok(3, 2, 4, 14)
    with pytest.raises(CutoffMarginError):
        rs_sums(to_matrix(p4, 14), 2, 3)
