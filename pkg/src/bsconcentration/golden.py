"""Published numbers for the worked concentration example and the gamma = 0.1 curve."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import metrics
from .protocol import BeamSplitterSettings, bs_transform
from .states import StateFamilyParams, mixed_family

WORKED_PARAMS = StateFamilyParams(eps1=1.0, eps2=0.1, phi=0.0, gamma=0.30)
WORKED_SETTINGS = BeamSplitterSettings.symmetric(np.sqrt(0.1), 1.0)

PRINTED_INPUT = np.array([
    [0.297, 0, 0, 0.030],
    [0, 0.350, 0.350, 0],
    [0, 0.350, 0.350, 0],
    [0.030, 0, 0, 0.003],
])
PRINTED_OUTPUT = np.array([
    [0.039, 0, 0, 0.039],
    [0, 0.461, 0.461, 0],
    [0, 0.461, 0.461, 0],
    [0.039, 0, 0, 0.039],
])
ENTRY_TOL = 5e-4

EOF_IN, EOF_OUT = 0.52, 0.78
ENTROPY_IN, ENTROPY_OUT = 0.30, 0.20
MEASURE_TOL = 0.01
PROBABILITY = 0.076
PROBABILITY_TOL = 0.002

# gamma = 0.1 curve
CURVE_PARAMS = StateFamilyParams(eps1=1.0, eps2=0.1, phi=0.0, gamma=0.1)
CURVE_START = (0.23, 0.84)
CURVE_PEAK = (0.075, 0.94)
CURVE_PEAK_ETA = 0.32
CURVE_ETA_TOL = 0.02


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    value: float
    expected: float
    tol: float

    @property
    def passed(self) -> bool:
        return abs(self.value - self.expected) <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: got {self.value:.4f}, expected {self.expected:.4f} +/- {self.tol:g}"


def worked_example():
    """Run the worked example; returns ``(input, outcome, checks)``."""
    rho = mixed_family(WORKED_PARAMS)
    outcome = bs_transform(rho, WORKED_SETTINGS)
    m_in, m_out = metrics(rho), metrics(outcome.output)
    dev_in = float(np.max(np.abs(rho.mat - PRINTED_INPUT)))
    dev_out = float(np.max(np.abs(outcome.output.mat - PRINTED_OUTPUT)))
    checks = [
        GoldenCheck("input matrix max entry deviation", dev_in, 0.0, ENTRY_TOL),
        GoldenCheck("output matrix max entry deviation", dev_out, 0.0, ENTRY_TOL),
        GoldenCheck("EOF before", m_in.eof, EOF_IN, MEASURE_TOL),
        GoldenCheck("EOF after", m_out.eof, EOF_OUT, MEASURE_TOL),
        GoldenCheck("entropy before", m_in.entropy, ENTROPY_IN, MEASURE_TOL),
        GoldenCheck("entropy after", m_out.entropy, ENTROPY_OUT, MEASURE_TOL),
        GoldenCheck("success probability", outcome.success_probability, PROBABILITY, PROBABILITY_TOL),
    ]
    return rho, outcome, checks
