"""Two-qubit polarization states and the families the protocol acts on.

The basis order is fixed everywhere as ``(VV, VH, HV, HH)``; index ``2*a + b``
with ``V = 0`` and ``H = 1`` for photons A and B.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg

BASIS = ("VV", "VH", "HV", "HH")
TRACE_TOL = 1e-10
PURE_TOL = 1e-8


class StateValidationError(ValueError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    hermitian: bool
    unit_trace: bool
    positive: bool

    @property
    def ok(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive

    def failures(self) -> list[str]:
        names = []
        if not self.hermitian:
            names.append("hermitian")
        if not self.unit_trace:
            names.append("trace")
        if not self.positive:
            names.append("positive")
        return names


def validate(mat) -> ValidationReport:
    """Check Hermiticity, unit trace and positivity of a 4x4 matrix.

    Never raises on bad input; each check is reported separately.
    """
    m = np.asarray(mat, dtype=complex)
    if m.shape != (4, 4):
        raise StateValidationError(f"expected a 4x4 matrix, got shape {m.shape}")
    herm = linalg.hermiticity_deviation(m)
    trace_dev = abs(np.trace(m) - 1.0)
    # Spectrum of the Hermitian part, so the positivity check is still meaningful
    # when the Hermiticity check fails.
    hpart = 0.5 * (m + linalg.adjoint(m))
    min_eig = float(linalg.eigvalsh(hpart)[-1])
    return ValidationReport(
        hermiticity_deviation=herm,
        trace_deviation=float(trace_dev),
        min_eigenvalue=min_eig,
        hermitian=herm <= linalg.HERMITIAN_TOL,
        unit_trace=trace_dev <= TRACE_TOL,
        positive=min_eig >= -linalg.NEGATIVE_EIG_TOL,
    )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated two-qubit density matrix in the ``(VV, VH, HV, HH)`` basis."""

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        report = validate(m)
        if not report.ok:
            raise StateValidationError(
                "not a valid density matrix ({}): hermiticity {:.2e}, trace {:.2e}, "
                "min eigenvalue {:.2e}".format(
                    ", ".join(report.failures()),
                    report.hermiticity_deviation,
                    report.trace_deviation,
                    report.min_eigenvalue,
                )
            )
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    def __getitem__(self, idx):
        return self.mat[idx]

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(\n{np.array2string(self.mat, precision=4, suppress_small=True)})"

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def allclose(self, other, atol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.mat - np.asarray(other))) <= atol)

    def to_dict(self) -> dict:
        return {
            "basis": list(BASIS),
            "re": [[float(x) for x in row] for row in self.mat.real],
            "im": [[float(x) for x in row] for row in self.mat.imag],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "DensityMatrix":
        try:
            basis = data["basis"]
            re, im = data["re"], data["im"]
        except (KeyError, TypeError) as exc:
            raise StateValidationError(f"state JSON missing field: {exc}") from None
        if list(basis) != list(BASIS):
            raise StateValidationError(f"basis must be {list(BASIS)}, got {basis}")
        try:
            m = np.array(re, dtype=float) + 1j * np.array(im, dtype=float)
        except (TypeError, ValueError) as exc:
            raise StateValidationError(f"bad matrix entries: {exc}") from None
        if m.shape != (4, 4):
            raise StateValidationError(f"expected 4x4 re/im arrays, got {m.shape}")
        return cls(m)

    @classmethod
    def from_json(cls, text: str) -> "DensityMatrix":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateValidationError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


@dataclass(frozen=True)
class StateFamilyParams:
    """Parameters of the state families.

    ``eps1`` and ``eps2`` may be complex; ``phi`` is folded onto ``eps2``.
    """

    eps1: complex = 1.0
    eps2: complex = 1.0
    phi: float = 0.0
    gamma: float = 1.0
    werner_fraction: float = 1.0

    def __post_init__(self):
        if self.eps1 == 0 and self.eps2 == 0:
            raise StateValidationError("eps1 and eps2 cannot both be zero")
        for name in ("gamma", "werner_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise StateValidationError(f"{name} must lie in [0, 1], got {value}")

    @property
    def amplitudes(self) -> tuple[complex, complex]:
        """Normalized ``(eps1, eps2 * exp(i phi))``."""
        a, b = complex(self.eps1), complex(self.eps2) * np.exp(1j * self.phi)
        norm = math.hypot(abs(a), abs(b))
        if norm == 0.0 or not math.isfinite(norm):
            raise StateValidationError(f"cannot normalize amplitudes ({self.eps1}, {self.eps2})")
        return a / norm, b / norm


def _projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    return np.outer(v, v.conj())


def pure_vv_hh(params: StateFamilyParams) -> DensityMatrix:
    a, b = params.amplitudes
    return DensityMatrix(_projector([a, 0, 0, b]))


def pure_vh_hv(params: StateFamilyParams) -> DensityMatrix:
    a, b = params.amplitudes
    return DensityMatrix(_projector([0, a, b, 0]))


def mixed_family(params: StateFamilyParams) -> DensityMatrix:
    """``gamma`` times the VV/HH pure state plus ``(1 - gamma)`` of the VH/HV Bell state."""
    g = params.gamma
    psi_plus = np.zeros((4, 4))
    psi_plus[1:3, 1:3] = 0.5
    return DensityMatrix(g * pure_vv_hh(params).mat + (1.0 - g) * psi_plus)


def werner(fraction: float, pure: DensityMatrix) -> DensityMatrix:
    if not 0.0 <= fraction <= 1.0:
        raise StateValidationError(f"Werner fraction must lie in [0, 1], got {fraction}")
    if pure.purity < 1.0 - PURE_TOL:
        raise StateValidationError(f"Werner constructor needs a pure state, purity is {pure.purity:.6f}")
    return DensityMatrix(fraction * pure.mat + (1.0 - fraction) * np.eye(4) / 4.0)


_BELL = {
    "phi+": [1, 0, 0, 1],
    "phi-": [1, 0, 0, -1],
    "psi+": [0, 1, 1, 0],
    "psi-": [0, 1, -1, 0],
}


def bell(name: str = "phi+") -> DensityMatrix:
    try:
        vec = np.array(_BELL[name], dtype=complex) / np.sqrt(2.0)
    except KeyError:
        raise StateValidationError(f"unknown Bell state {name!r}; choose from {sorted(_BELL)}") from None
    return DensityMatrix(_projector(vec))


def product(label: str = "VV") -> DensityMatrix:
    vec = np.zeros(4, dtype=complex)
    vec[BASIS.index(label)] = 1.0
    return DensityMatrix(_projector(vec))


def maximally_mixed() -> DensityMatrix:
    return DensityMatrix(np.eye(4) / 4.0)
