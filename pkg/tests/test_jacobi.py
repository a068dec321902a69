import numpy as np
import pytest

from ladderkit.algebra import OperatorPoly
from ladderkit.core.errors import NonHermitianMatrixError
from ladderkit.numeric import eig_hermitian, hamiltonian_matrix
from ladderkit.numeric.jacobi import eig_residuals


def _random_hermitian(seed: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (x + x.conj().T) / 2


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_matches_reference_eigenvalues(seed):
    h = _random_hermitian(seed, 9)
    values, vectors = eig_hermitian(h)
    np.testing.assert_allclose(values, np.linalg.eigvalsh(h), atol=1e-10)
    v = vectors.entries
    np.testing.assert_allclose(v.conj().T @ v, np.eye(9), atol=1e-10)
    assert np.max(np.abs(h @ v - v * values)) < 1e-9


def test_shifted_oscillator_spectrum():
    # H₀ + λq is exactly solvable: ħω(n + ½) − λ²/(2mω²); the cutoff only touches the top levels
    lam = 0.3
    h = hamiltonian_matrix(OperatorPoly.position(), lam, 40)
    values, vectors = eig_hermitian(h)
    expected = np.arange(5) + 0.5 - lam ** 2 / 2
    np.testing.assert_allclose(values[:5], expected, atol=1e-9)
    assert np.max(eig_residuals(h, values, vectors)) < 1e-9


def test_diagonal_and_zero_input():
    values, _ = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(values, [1.0, 2.0, 3.0])
    values, vectors = eig_hermitian(np.zeros((3, 3)))
    np.testing.assert_allclose(values, np.zeros(3))
    np.testing.assert_allclose(vectors.entries, np.eye(3))


def test_rejects_non_hermitian_input():
    with pytest.raises(NonHermitianMatrixError):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
