"""
Small dense linear algebra helpers shared by the channel model, BD kernels and the dual solver.
"""

from typing import Tuple

import numpy as np
import scipy.linalg

# singular value s counts as zero iff s <= RANK_TOL * s_max
RANK_TOL = 1e-10


def herm(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose of the last two axes"""
    return np.swapaxes(a, -1, -2).conj()


def numerical_rank(singular_values: np.ndarray, tol: float = RANK_TOL) -> int:
    if singular_values.size == 0:
        return 0
    s_max = float(np.max(singular_values))
    if s_max <= 0.0:
        return 0
    return int(np.count_nonzero(singular_values > tol * s_max))


def hermitian_eig(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending"""
    a = 0.5 * (a + herm(a))
    return scipy.linalg.eigh(a)


def inv_sqrt_hermitian(a: np.ndarray) -> np.ndarray:
    """A^{-1/2} for a Hermitian positive definite matrix"""
    w, u = hermitian_eig(a)
    if w[0] <= 0.0:
        raise np.linalg.LinAlgError("matrix is not positive definite")
    return (u / np.sqrt(w)) @ herm(u)


def psd_factor(a: np.ndarray, clip: float = 1e-9) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-factor a Hermitian PSD matrix: returns (E, s) with A = E diag(s) E^H.
    Eigenvalues in [-clip, 0) are set to zero; more negative values are returned unchanged
    so the caller can decide what to do with them.
    """
    s, e = hermitian_eig(a)
    s = np.where((s < 0.0) & (s >= -clip), 0.0, s)
    return e, s
