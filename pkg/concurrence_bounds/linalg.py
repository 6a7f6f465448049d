"""Dense complex-matrix arithmetic and the two numerical kernels.

Matrices are 2-D numpy complex128 arrays. The Hermitian eigensolver is a
cyclic Jacobi iteration; singular values come from the eigenvalues of the
Gram matrix, so there is only one decomposition to trust.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from concurrence_bounds.config import DEFAULT_TOLERANCES, Tolerances
from concurrence_bounds.errors import (
    ConvergenceError, DimensionError, HermiticityError,
)
from concurrence_bounds.log import logger

ComplexMatrix = npt.NDArray[np.complex128]


@dataclass(frozen=True)
class EigResult:
    """Spectrum in descending order; column k of ``eigenvectors`` belongs to
    ``eigenvalues[k]``."""
    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix
    sweeps: int = 0


# =============================================================================
# Validation helpers
# =============================================================================

def as_matrix(a) -> ComplexMatrix:
    """Coerce to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f'expected a non-empty 2-D matrix, got shape {m.shape}')
    if not np.all(np.isfinite(m)):
        raise DimensionError('matrix has non-finite entries')
    return m


def require_square(a: ComplexMatrix) -> int:
    """Return the size of a square matrix or raise DimensionError."""
    rows, cols = a.shape
    if rows != cols:
        raise DimensionError(f'expected a square matrix, got {rows}x{cols}')
    return rows


def frobenius(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a))


def hermiticity_defect(h: ComplexMatrix) -> float:
    """||h - h^dag||_F divided by max(1, ||h||_F)."""
    return frobenius(h - dagger(h)) / max(1.0, frobenius(h))


# =============================================================================
# Arithmetic
# =============================================================================

def matmul(a, b) -> ComplexMatrix:
    """Standard matrix product."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(
            f'cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}')
    return a @ b


def dagger(a) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.conj(np.asarray(a, dtype=np.complex128)).T


def kron(a, b) -> ComplexMatrix:
    """Kronecker product; block (p, q) equals a[p, q] * b."""
    return np.kron(as_matrix(a), as_matrix(b))


def trace(a) -> complex:
    a = as_matrix(a)
    require_square(a)
    return complex(np.trace(a))


def purity(rho) -> float:
    """Real part of Tr(rho^2)."""
    rho = as_matrix(rho)
    require_square(rho)
    # Tr(rho rho) without forming the product
    return float(np.real(np.sum(rho * rho.T)))


# =============================================================================
# Hermitian eigendecomposition (cyclic Jacobi)
# =============================================================================

def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """2x2 unitary U with (U^dag [[app, apq], [conj(apq), aqq]] U)_01 == 0."""
    r = abs(apq)
    phase = apq / r
    theta = 0.5 * np.arctan2(2.0 * r, aqq - app)
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s],
                     [-s * np.conj(phase), c * np.conj(phase)]],
                    dtype=np.complex128)


def hermitian_eig(h, tol: Tolerances = DEFAULT_TOLERANCES) -> EigResult:
    """Full spectrum and orthonormal eigenvectors of a Hermitian matrix.

    Raises:
        DimensionError: non-square input.
        HermiticityError: ||h - h^dag||_F > tol.hermitian * max(1, ||h||_F).
        ConvergenceError: off-diagonal mass still above the stop criterion
            after ``tol.jacobi_max_sweeps`` sweeps.
    """
    h = as_matrix(h)
    n = require_square(h)
    defect = hermiticity_defect(h)
    if defect > tol.hermitian:
        raise HermiticityError(f'matrix is not Hermitian (defect {defect:.3e})')

    a = 0.5 * (h + dagger(h))
    v = np.eye(n, dtype=np.complex128)
    stop = tol.jacobi_offdiag * frobenius(a)
    off_mask = ~np.eye(n, dtype=bool)

    sweeps = 0
    while n > 1 and np.max(np.abs(a[off_mask])) >= stop > 0:
        if sweeps >= tol.jacobi_max_sweeps:
            raise ConvergenceError(
                f'Jacobi did not converge in {tol.jacobi_max_sweeps} sweeps')
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < stop:
                    continue
                u = _rotation(a[p, p].real, a[q, q].real, apq)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = dagger(u) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ u

    eigenvalues = np.real(np.diag(a)).copy()
    order = np.argsort(-eigenvalues, kind='stable')
    logger.debug('Jacobi: n={} sweeps={}', n, sweeps)
    return EigResult(eigenvalues=eigenvalues[order],
                     eigenvectors=v[:, order], sweeps=sweeps)


# =============================================================================
# Singular values and trace norm
# =============================================================================

def singular_values(a, tol: Tolerances = DEFAULT_TOLERANCES) -> npt.NDArray[np.float64]:
    """min(rows, cols) singular values, descending.

    Uses the eigenvectors of the smaller Gram matrix (a^dag a, or a a^dag
    when cols > rows) and takes each singular value as the norm of the image
    of its eigenvector, which stays accurate for rank-deficient inputs where
    the square root of a rounded eigenvalue would not.
    """
    a = as_matrix(a)
    rows, cols = a.shape
    wide = cols > rows
    gram = a @ dagger(a) if wide else dagger(a) @ a
    eig = hermitian_eig(gram, tol)
    floor = tol.gram_clamp * max(1.0, abs(eig.eigenvalues[0]))
    if eig.eigenvalues[-1] < -floor:
        logger.warning('Gram matrix eigenvalue {:.3e} below clamp', eig.eigenvalues[-1])
    vecs = eig.eigenvectors
    images = dagger(vecs) @ a if wide else a @ vecs
    sv = np.linalg.norm(images, axis=1 if wide else 0)
    return np.sort(sv)[::-1]


def trace_norm(a, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Sum of singular values."""
    return float(np.sum(singular_values(a, tol)))


def spectrum_abs_sum(h, tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[float, float]:
    """(sum |lambda_k|, min lambda_k) for a Hermitian matrix."""
    eig = hermitian_eig(h, tol)
    return float(np.sum(np.abs(eig.eigenvalues))), float(eig.eigenvalues[-1])
