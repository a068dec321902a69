# ladderkit/numeric/jacobi.py
"""Cyclic Jacobi eigensolver for dense complex Hermitian matrices."""

from __future__ import annotations

import math
from typing import Tuple, Union

import numpy as np

from ladderkit.core.errors import NonHermitianMatrixError
from ladderkit.numeric.fock import FockMatrix


def _off_norm(a: np.ndarray) -> float:
    return float(math.sqrt(max(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2), 0.0)))


def eig_hermitian(
    matrix: Union[FockMatrix, np.ndarray],
    hermitian_tol: float = 1e-12,
    max_sweeps: int = 100,
) -> Tuple[np.ndarray, FockMatrix]:
    """
    Ascending eigenvalues and the matching eigenvectors (as columns).

    Each rotation first removes the phase of A[p, q] and then applies the
    real symmetric Jacobi rotation; pairs are visited row by row, so the
    result does not depend on scheduling.
    """
    a = np.array(matrix.entries if isinstance(matrix, FockMatrix) else matrix, dtype=complex)
    dim = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    if float(np.max(np.abs(a - a.conj().T), initial=0.0)) > hermitian_tol * scale:
        raise NonHermitianMatrixError("eigensolver input is not Hermitian", tolerance=hermitian_tol)

    vectors = np.eye(dim, dtype=complex)
    frobenius = float(np.linalg.norm(a))
    if frobenius == 0.0:
        return np.zeros(dim), FockMatrix(vectors)
    skip = 1e-17 * frobenius

    for _ in range(max_sweeps):
        if _off_norm(a) <= 1e-14 * frobenius:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # U = diag(1, conj(phase)) · [[c, s], [−s, c]]
                u00, u01 = c, s
                u10, u11 = -s * phase.conjugate(), c * phase.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * u00 + col_q * u10
                a[:, q] = col_p * u01 + col_q * u11

                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(u00) * row_p + np.conj(u10) * row_q
                a[q, :] = np.conj(u01) * row_p + np.conj(u11) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vec_p = vectors[:, p].copy()
                vec_q = vectors[:, q].copy()
                vectors[:, p] = vec_p * u00 + vec_q * u10
                vectors[:, q] = vec_p * u01 + vec_q * u11

    values = np.real(np.diag(a))
    order = np.argsort(values, kind="stable")
    return values[order], FockMatrix(vectors[:, order])


def eig_residuals(matrix: FockMatrix, values: np.ndarray, vectors: FockMatrix) -> np.ndarray:
    """‖H v − λ v‖ per eigenpair."""
    h = matrix.entries
    v = vectors.entries
    return np.linalg.norm(h @ v - v * values[np.newaxis, :], axis=0)
