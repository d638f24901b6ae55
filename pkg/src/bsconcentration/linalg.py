"""Dense Hermitian linear algebra for the small matrices used in this package.

Matrices are plain ``numpy`` arrays of shape ``(n, n)``. The eigensolver is a
cyclic complex Jacobi iteration; it is fast enough for ``n <= 16`` and has no
dependency beyond array storage and products.
"""
from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-10
OFFDIAG_TOL = 1e-14
MAX_SWEEPS = 60
# Eigenvalues within this multiple of eps * max|eigenvalue| are round-off.
RESOLUTION_FACTOR = 16.0


class NotHermitianError(ValueError):
    pass


class NotPSDError(ValueError):
    pass


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def hermiticity_deviation(m: np.ndarray) -> float:
    """Largest entrywise ``|M - M^dagger|``."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - adjoint(m)))) if m.size else 0.0


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eig(m, tol: float | None = None):
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Hermitian matrix (checked to ``tol``, default ``HERMITIAN_TOL``).

    Returns
    -------
    eigenvalues : ndarray, shape (n,)
        Real eigenvalues in descending order.
    eigenvectors : ndarray, shape (n, n)
        Unitary matrix whose columns are the matching eigenvectors.
    """
    tol = HERMITIAN_TOL if tol is None else tol
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    dev = hermiticity_deviation(a)
    if dev > tol:
        raise NotHermitianError(f"matrix is not Hermitian: max |M - M^dagger| = {dev:.3e}")
    n = a.shape[0]
    a = 0.5 * (a + adjoint(a))
    v = np.eye(n, dtype=complex)

    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= OFFDIAG_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g <= 1e-300:
                    continue
                e = apq / g
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / abs(theta)
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ce = np.conj(e)

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * ce * col_q
                a[:, q] = s * col_p + c * ce * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * e * row_q
                a[q, :] = s * row_p + c * e * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * ce * vq
                v[:, q] = s * vp + c * ce * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(m, tol: float | None = None) -> np.ndarray:
    return hermitian_eig(m, tol)[0]


def sqrt_from_eig(w, v) -> np.ndarray:
    """Square root assembled from a PSD eigen-decomposition.

    Eigenvalues in ``[-NEGATIVE_EIG_TOL, 0)`` are clamped to zero; anything
    more negative raises :class:`NotPSDError`. Positive eigenvalues below the
    solver resolution are zeroed too, otherwise their square roots
    (``~sqrt(eps)``) would leak into the result.
    """
    w = np.asarray(w, dtype=float)
    if w.size and w.min() < -NEGATIVE_EIG_TOL:
        raise NotPSDError(f"matrix is not positive semidefinite: min eigenvalue {w.min():.3e}")
    floor = RESOLUTION_FACTOR * np.finfo(float).eps * max(np.max(np.abs(w), initial=0.0), 1e-300)
    w = np.where(w > floor, w, 0.0)
    r = (v * np.sqrt(w)) @ adjoint(v)
    return 0.5 * (r + adjoint(r))


def psd_sqrt(m, tol: float | None = None) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix (see :func:`sqrt_from_eig`)."""
    return sqrt_from_eig(*hermitian_eig(m, tol))


def singular_values(m, tol: float = 1e-15) -> np.ndarray:
    """Singular values (descending) of a square complex matrix.

    One-sided (Hestenes) Jacobi: column pairs are rotated until mutually
    orthogonal, and the singular values are the final column norms. Small
    singular values come out accurate to round-off, not to its square root
    as they would from the eigenvalues of ``M^dagger M``.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[1]
    for _ in range(MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                ai = a[:, i].copy()
                aj = a[:, j]
                alpha = float(np.vdot(ai, ai).real)
                beta = float(np.vdot(aj, aj).real)
                gamma = np.vdot(ai, aj)
                g = abs(gamma)
                if g <= tol * np.sqrt(alpha * beta) or g <= 1e-300:
                    continue
                rotated = True
                e = gamma / g
                zeta = (beta - alpha) / (2.0 * g)
                if abs(zeta) > 1e150:
                    t = 0.5 / abs(zeta)
                else:
                    t = 1.0 / (abs(zeta) + np.sqrt(zeta * zeta + 1.0))
                if zeta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ce = np.conj(e)
                a[:, i] = c * ai - s * ce * aj
                a[:, j] = s * ai + c * ce * aj
        if not rotated:
            break
    else:
        raise RuntimeError("one-sided Jacobi did not converge")
    return np.sort(np.linalg.norm(a, axis=0))[::-1]
