"""Entanglement and purity measures for two-qubit density matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import DensityMatrix

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SIGMA_Y, SIGMA_Y)
X_STATE_TOL = 1e-10
DOMAIN_TOL = 1e-12

# Positions allowed to be nonzero in an X-shaped 4x4 matrix.
_X_MASK = np.eye(4, dtype=bool) | np.eye(4, dtype=bool)[::-1]


class NotXStateError(ValueError):
    pass


@dataclass(frozen=True)
class EntanglementMetrics:
    concurrence: float
    eof: float
    entropy: float
    purity: float

    def as_dict(self) -> dict:
        return {"concurrence": self.concurrence, "eof": self.eof, "entropy": self.entropy, "purity": self.purity}


def _as_matrix(rho) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)``; accepts any 4x4 matrix."""
    return YY @ np.conj(_as_matrix(rho)) @ YY


def _concurrence_from_sqrt(sqrt_rho: np.ndarray) -> float:
    # rho @ spin_flip(rho) has the same spectrum as sqrt(rho) spin_flip(rho) sqrt(rho),
    # whose square roots are the singular values of sqrt(rho) @ sqrt(spin_flip(rho)).
    # The spin flip commutes with the matrix square root.
    lam = linalg.singular_values(sqrt_rho @ spin_flip(sqrt_rho))
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def concurrence(rho: DensityMatrix) -> float:
    return _concurrence_from_sqrt(linalg.psd_sqrt(_as_matrix(rho)))


def x_state_concurrence_oracle(rho) -> float:
    """Closed-form concurrence of a matrix supported on its diagonal and anti-diagonal."""
    m = _as_matrix(rho)
    stray = np.max(np.abs(m[~_X_MASK]))
    if stray > X_STATE_TOL:
        raise NotXStateError(f"not an X-state: off-X entry of modulus {stray:.3e}")
    d = np.real(np.diag(m))
    return float(
        2.0 * max(0.0, abs(m[1, 2]) - np.sqrt(d[0] * d[3]), abs(m[0, 3]) - np.sqrt(d[1] * d[2]))
    )


def binary_entropy(x: float) -> float:
    """Binary entropy in bits, with ``h(0) = h(1) = 0``."""
    if x < -DOMAIN_TOL or x > 1.0 + DOMAIN_TOL:
        raise ValueError(f"binary entropy argument outside [0, 1]: {x}")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def eof_from_concurrence(c: float) -> float:
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c * c)))


def eof(rho: DensityMatrix) -> float:
    """Entanglement of formation, in ebits."""
    return eof_from_concurrence(concurrence(rho))


def _entropy_from_eigenvalues(w) -> float:
    w = np.clip(np.asarray(w, dtype=float), 0.0, None)
    w = w[w > 0.0]
    return float(max(-np.sum(w * np.log(w)) / np.log(4.0), 0.0)) + 0.0


def entropy_log4(rho: DensityMatrix) -> float:
    """Von Neumann entropy with base-4 logarithm, so ``I/4`` has entropy 1."""
    return _entropy_from_eigenvalues(linalg.eigvalsh(_as_matrix(rho)))


def purity(rho: DensityMatrix) -> float:
    m = _as_matrix(rho)
    return float(np.real(np.trace(m @ m)))


def metrics(rho: DensityMatrix) -> EntanglementMetrics:
    m = _as_matrix(rho)
    w, v = linalg.hermitian_eig(m)
    c = _concurrence_from_sqrt(linalg.sqrt_from_eig(w, v))
    return EntanglementMetrics(
        concurrence=c,
        eof=eof_from_concurrence(c),
        entropy=_entropy_from_eigenvalues(w),
        purity=purity(m),
    )
