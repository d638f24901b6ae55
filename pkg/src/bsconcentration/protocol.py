"""Post-selected beam-splitter filtering of the four polarization modes.

Each polarization mode (V and H of photons A and B) passes its own beam
splitter with vacuum in the second port. Keeping only coincidences (one photon
detected on each side in the transmitted ports) turns the map into a local
diagonal filter on the two-qubit state. ``eta_*`` are *amplitude*
transmission coefficients; the loss amplitude is ``sqrt(1 - eta**2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .states import DensityMatrix, StateFamilyParams, pure_vh_hv

MIN_PROBABILITY = 1e-15


class DegeneratePostselectionError(ValueError):
    pass


class NoDistillationError(ValueError):
    pass


@dataclass(frozen=True)
class BeamSplitterSettings:
    eta_va: float = 1.0
    eta_ha: float = 1.0
    eta_vb: float = 1.0
    eta_hb: float = 1.0

    def __post_init__(self):
        for name, value in self.as_dict().items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")

    @classmethod
    def from_sequence(cls, values: Iterable[float]) -> "BeamSplitterSettings":
        vals = [float(v) for v in values]
        if len(vals) != 4:
            raise ValueError(f"need four coefficients (va, ha, vb, hb), got {len(vals)}")
        return cls(*vals)

    @classmethod
    def symmetric(cls, eta_v: float, eta_h: float = 1.0) -> "BeamSplitterSettings":
        return cls(eta_v, eta_h, eta_v, eta_h)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.eta_va, self.eta_ha, self.eta_vb, self.eta_hb)

    def as_dict(self) -> dict:
        return {"eta_va": self.eta_va, "eta_ha": self.eta_ha, "eta_vb": self.eta_vb, "eta_hb": self.eta_hb}

    @property
    def product(self) -> float:
        return self.eta_va * self.eta_ha * self.eta_vb * self.eta_hb

    @property
    def amplitudes(self) -> np.ndarray:
        """Survival amplitude of each basis ket VV, VH, HV, HH."""
        return np.array([
            self.eta_va * self.eta_vb,
            self.eta_va * self.eta_hb,
            self.eta_ha * self.eta_vb,
            self.eta_ha * self.eta_hb,
        ])

    def compose(self, other: "BeamSplitterSettings") -> "BeamSplitterSettings":
        """Settings equivalent to passing through ``self`` then ``other``."""
        return BeamSplitterSettings(*(a * b for a, b in zip(self.as_tuple(), other.as_tuple())))


@dataclass(frozen=True)
class ProtocolOutcome:
    output: DensityMatrix
    success_probability: float


def _normalize(unnormalized: np.ndarray) -> ProtocolOutcome:
    p = float(np.real(np.trace(unnormalized)))
    if p <= MIN_PROBABILITY:
        raise DegeneratePostselectionError(f"coincidence probability {p:.3e} is too small to post-select on")
    out = unnormalized / p
    return ProtocolOutcome(DensityMatrix(0.5 * (out + out.conj().T)), p)


def bs_transform(rho: DensityMatrix, settings: BeamSplitterSettings) -> ProtocolOutcome:
    """Closed-form coincidence-basis output: ``rho_ij * a_i * a_j`` renormalized.

    ``success_probability`` is the trace of the unnormalized matrix.
    """
    a = settings.amplitudes
    return _normalize(np.asarray(rho.mat) * np.outer(a, a))


def _photon_unitary(eta_v: float, eta_h: float) -> np.ndarray:
    # Modes: V, H, lost V, lost H.
    u = np.zeros((4, 4))
    for mode, eta in ((0, eta_v), (1, eta_h)):
        loss = np.sqrt(max(0.0, 1.0 - eta * eta))
        lost = mode + 2
        u[mode, mode] = eta
        u[lost, mode] = loss
        u[mode, lost] = -loss
        u[lost, lost] = eta
    return u


_COINCIDENCE = np.array([4 * i + j for i in (0, 1) for j in (0, 1)])


def fock_oracle(rho: DensityMatrix, settings: BeamSplitterSettings) -> ProtocolOutcome:
    """Same map as :func:`bs_transform`, computed in the 16-dim two-photon mode space.

    Each photon lives in ``{V, H, lost V, lost H}``; the beam splitters act as
    a unitary on that space, and the result is projected back onto the
    coincidence subspace where both photons are still in a transmitted mode.
    """
    big = np.zeros((16, 16), dtype=complex)
    big[np.ix_(_COINCIDENCE, _COINCIDENCE)] = np.asarray(rho.mat)
    u = np.kron(
        _photon_unitary(settings.eta_va, settings.eta_ha),
        _photon_unitary(settings.eta_vb, settings.eta_hb),
    )
    evolved = u @ big @ u.conj().T
    return _normalize(evolved[np.ix_(_COINCIDENCE, _COINCIDENCE)])


def _moduli(eps1: complex, eps2: complex) -> tuple[float, float]:
    m1, m2 = abs(complex(eps1)), abs(complex(eps2))
    if m1 == 0.0 or m2 == 0.0:
        raise NoDistillationError("one amplitude is zero: a product state cannot be distilled")
    return m1, m2


def distill_settings_vv_hh(eps1: complex, eps2: complex) -> BeamSplitterSettings:
    """Settings balancing ``eps1|VV> + eps2|HH>`` by attenuating the stronger polarization."""
    m1, m2 = _moduli(eps1, eps2)
    if m1 >= m2:
        return BeamSplitterSettings.symmetric(np.sqrt(m2 / m1), 1.0)
    return BeamSplitterSettings.symmetric(1.0, np.sqrt(m1 / m2))


def distill_settings_vh_hv(eps1: complex, eps2: complex) -> BeamSplitterSettings:
    """Balance ``eps1|VH> + eps2|HV>`` by attenuating a single beam splitter.

    The VH amplitude picks up ``eta_va * eta_hb`` and the HV amplitude
    ``eta_ha * eta_vb``. Among the single-coefficient solutions the one with
    the highest coincidence probability is returned; on ties the A side wins.
    """
    m1, m2 = _moduli(eps1, eps2)
    if m1 == m2:
        return BeamSplitterSettings()
    ratio = min(m1, m2) / max(m1, m2)
    names = ("eta_va", "eta_hb") if m1 > m2 else ("eta_vb", "eta_ha")
    state = pure_vh_hv(StateFamilyParams(eps1, eps2))
    best, best_p = None, -1.0
    for name in names:
        candidate = BeamSplitterSettings(**{name: ratio})
        p = bs_transform(state, candidate).success_probability
        if p > best_p:
            best, best_p = candidate, p
    return best
