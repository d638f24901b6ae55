import numpy as np
import pytest

from bsconcentration.protocol import BeamSplitterSettings
from bsconcentration.states import DensityMatrix


def random_density(rng, rank=4):
    a = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_x_state(rng):
    # Two independent 2x2 PSD blocks on {VV, HH} and {VH, HV}.
    m = np.zeros((4, 4), dtype=complex)
    for idx in ((0, 3), (1, 2)):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m[np.ix_(idx, idx)] = a @ a.conj().T * rng.uniform(0.05, 1.0)
    return DensityMatrix(m / np.trace(m).real)


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_settings(rng, low=0.05):
    return BeamSplitterSettings(*rng.uniform(low, 1.0, size=4))


def numpy_concurrence(mat):
    """Textbook route: square roots of the eigenvalues of rho @ rho_tilde (non-Hermitian)."""
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    m = np.asarray(mat)
    ev = np.linalg.eigvals(m @ yy @ m.conj() @ yy)
    lam = np.sort(np.sqrt(np.abs(ev.real)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# Collected by test_acceptance, printed at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
