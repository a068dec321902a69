import math

import numpy as np
import pytest

from ladderkit.algebra import OperatorPoly, hbar_omega
from ladderkit.numeric import FockMatrix, UnitValues, hamiltonian_matrix, series_matrix, to_matrix

a = OperatorPoly.annihilator()
ad = OperatorPoly.creator()


def test_ladder_matrices():
    m = to_matrix(a, 4).entries
    assert m[0, 1] == pytest.approx(1.0)
    assert m[1, 2] == pytest.approx(math.sqrt(2))
    assert m[2, 3] == pytest.approx(math.sqrt(3))
    np.testing.assert_allclose(to_matrix(ad, 4).entries, to_matrix(a, 4).dagger().entries)
    np.testing.assert_allclose(np.diag(to_matrix(OperatorPoly.number(), 5).entries).real, np.arange(5))


def test_products_agree_away_from_the_cutoff():
    dim = 10
    x = OperatorPoly.position() ** 3
    direct = to_matrix(x, dim).block(dim - 3)
    q = to_matrix(OperatorPoly.position(), dim)
    np.testing.assert_allclose(direct, (q @ q @ q).block(dim - 3), atol=1e-12)


def test_unit_values_are_substituted():
    m = to_matrix(OperatorPoly.scalar(hbar_omega()), 3, UnitValues(hbar=2.0, omega=3.0))
    np.testing.assert_allclose(m.entries, 6.0 * np.eye(3))


def test_hamiltonian_and_series():
    h = hamiltonian_matrix(OperatorPoly.position(), 0.0, 5)
    np.testing.assert_allclose(np.diag(h.entries).real, np.arange(5) + 0.5)
    s = series_matrix([a, a], 0.5, 3)
    np.testing.assert_allclose(s.entries, 1.5 * to_matrix(a, 3).entries)


def test_shape_properties():
    q = to_matrix(OperatorPoly.position(), 8)
    assert q.hermitian_defect() == pytest.approx(0.0)
    assert q.bandwidth() == 1
    assert to_matrix(OperatorPoly.momentum() ** 4, 12).bandwidth() == 4
    assert FockMatrix.zeros(3).bandwidth() == 0


def test_invalid_shapes():
    with pytest.raises(ValueError):
        to_matrix(a, 0)
    with pytest.raises(ValueError):
        FockMatrix(np.zeros((2, 3)))
