import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bsconcentration import states
from bsconcentration.states import (
    BASIS,
    DensityMatrix,
    StateFamilyParams,
    StateValidationError,
    bell,
    maximally_mixed,
    mixed_family,
    pure_vh_hv,
    pure_vv_hh,
    validate,
    werner,
)
from conftest import numpy_concurrence, random_density

# 1 / (1 + 0.1**2), evaluated by hand
N1_SQ = 1 / 1.01


def test_pure_vv_hh_bell():
    rho = pure_vv_hh(StateFamilyParams(1, 1, 0))
    for i in (0, 3):
        for j in (0, 3):
            assert rho[i, j] == pytest.approx(0.5, abs=1e-15)


def test_pure_vv_hh_product():
    rho = pure_vv_hh(StateFamilyParams(1, 0))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    np.testing.assert_allclose(rho.mat, expected, atol=1e-15)


def test_pure_vv_hh_unbalanced():
    rho = pure_vv_hh(StateFamilyParams(1, 0.1, 0))
    assert rho[0, 0].real == pytest.approx(0.990099, abs=1e-6)
    assert rho[3, 3].real == pytest.approx(0.009901, abs=1e-6)
    assert rho[0, 3] == pytest.approx(0.0990099, abs=1e-7)
    assert rho[0, 0].real == pytest.approx(N1_SQ, abs=1e-15)


def test_pure_vv_hh_offdiagonal_phase():
    phi = 0.7
    rho = pure_vv_hh(StateFamilyParams(1.0, 0.5, phi))
    assert rho[0, 3] == pytest.approx(0.5 / 1.25 * np.exp(-1j * phi), abs=1e-15)


def test_pure_vh_hv_examples():
    rho = pure_vh_hv(StateFamilyParams(1, 1, 0))
    for i, j in ((1, 1), (2, 2), (1, 2), (2, 1)):
        assert rho[i, j] == pytest.approx(0.5, abs=1e-15)
    rho = pure_vh_hv(StateFamilyParams(0, 1))
    assert rho[2, 2].real == pytest.approx(1.0)
    mirror = pure_vh_hv(StateFamilyParams(1, 0.1))
    ref = pure_vv_hh(StateFamilyParams(1, 0.1))
    np.testing.assert_allclose(mirror.mat[1:3, 1:3], ref.mat[np.ix_((0, 3), (0, 3))], atol=1e-15)


def test_mixed_family_worked_example_entries():
    rho = mixed_family(StateFamilyParams(1, 0.1, 0, 0.3))
    printed = {(0, 0): 0.297, (0, 3): 0.030, (1, 1): 0.350, (1, 2): 0.350, (2, 2): 0.350, (3, 3): 0.003}
    for (i, j), v in printed.items():
        assert abs(rho[i, j] - v) < 5e-4
        assert abs(rho[j, i] - v) < 5e-4


def test_mixed_family_limits():
    p = StateFamilyParams(1, 0.3, 0.4, 1.0)
    assert mixed_family(p).allclose(pure_vv_hh(p), atol=1e-15)
    rho = mixed_family(StateFamilyParams(1, 0.3, 0.4, 0.0))
    assert rho.allclose(bell("psi+"), atol=1e-15)
    assert numpy_concurrence(rho.mat) == pytest.approx(1.0)


@settings(max_examples=50, deadline=None)
@given(
    e1=st.floats(0.01, 2), e2=st.floats(0.01, 2), phi=st.floats(-np.pi, np.pi),
    g1=st.floats(0, 1), g2=st.floats(0, 1), lam=st.floats(0, 1),
)
def test_mixed_family_affine_in_gamma(e1, e2, phi, g1, g2, lam):
    a = mixed_family(StateFamilyParams(e1, e2, phi, g1)).mat
    b = mixed_family(StateFamilyParams(e1, e2, phi, g2)).mat
    mid = mixed_family(StateFamilyParams(e1, e2, phi, lam * g1 + (1 - lam) * g2)).mat
    assert np.max(np.abs(mid - (lam * a + (1 - lam) * b))) < 1e-12


@settings(max_examples=50, deadline=None)
@given(e1=st.floats(0.01, 2), e2=st.floats(0.01, 2), phi1=st.floats(-np.pi, np.pi), phi2=st.floats(-np.pi, np.pi))
def test_pure_constructors_phase_covariant(e1, e2, phi1, phi2):
    for build, (i, j) in ((pure_vv_hh, (0, 3)), (pure_vh_hv, (1, 2))):
        a = build(StateFamilyParams(e1, e2, phi1)).mat
        b = build(StateFamilyParams(e1, e2, phi2)).mat
        np.testing.assert_allclose(np.abs(a), np.abs(b), atol=1e-14)
        mask = np.ones((4, 4), dtype=bool)
        mask[i, j] = mask[j, i] = False
        np.testing.assert_allclose(a[mask], b[mask], atol=1e-14)


@settings(max_examples=50, deadline=None)
@given(e1=st.floats(0, 3), e2=st.floats(0, 3), phi=st.floats(-np.pi, np.pi), g=st.floats(0, 1))
def test_constructors_always_valid(e1, e2, phi, g):
    if max(e1, e2) < 1e-150:
        return
    p = StateFamilyParams(e1, e2, phi, g)
    for rho in (pure_vv_hh(p), pure_vh_hv(p), mixed_family(p), werner(g, pure_vv_hh(p))):
        assert validate(rho.mat).ok


def test_params_validation():
    with pytest.raises(StateValidationError):
        StateFamilyParams(0, 0)
    with pytest.raises(StateValidationError):
        StateFamilyParams(1, 1, 0, 1.5)
    with pytest.raises(StateValidationError):
        StateFamilyParams(1, 1, werner_fraction=-0.1)


def test_complex_eps_phase_folding():
    a = pure_vv_hh(StateFamilyParams(1, 0.5j))
    b = pure_vv_hh(StateFamilyParams(1, 0.5, np.pi / 2))
    assert a.allclose(b, atol=1e-15)


def test_werner_examples():
    assert werner(0.0, bell()).allclose(np.eye(4) / 4)
    assert werner(1.0, bell()).allclose(bell().mat)
    # standard Werner concurrence max(0, (3p - 1) / 2) at p = 0.5, via the textbook eigenvalue route
    assert numpy_concurrence(werner(0.5, bell()).mat) == pytest.approx(0.25, abs=1e-12)


def test_werner_requires_pure_input():
    with pytest.raises(StateValidationError, match="pure"):
        werner(0.5, maximally_mixed())
    with pytest.raises(StateValidationError):
        werner(1.2, bell())


def test_validate_reports():
    assert validate(np.eye(4) / 4).ok
    r = validate(np.eye(4) * 0.9 / 4)
    assert not r.unit_trace and r.hermitian and r.positive
    assert r.failures() == ["trace"]
    assert validate(mixed_family(StateFamilyParams(1, 0.1, 0, 0.3)).mat).ok

    m = np.eye(4, dtype=complex) / 4
    m[0, 1] = 0.1
    assert not validate(m).hermitian
    bad = np.diag([0.6, 0.6, -0.2, 0.0])
    r = validate(bad)
    assert not r.positive and r.min_eigenvalue == pytest.approx(-0.2)


def test_printed_input_matrix_rounding():
    printed = np.array([
        [0.297, 0, 0, 0.030],
        [0, 0.350, 0.350, 0],
        [0, 0.350, 0.350, 0],
        [0.030, 0, 0, 0.003],
    ])
    r = validate(printed)
    assert r.hermitian and r.unit_trace
    # 0.297 * 0.003 < 0.030**2: three-decimal rounding leaves a -3e-5 eigenvalue
    assert r.min_eigenvalue == pytest.approx(-3.0e-5, abs=1e-6)
    assert not r.positive


def test_density_matrix_rejects_invalid():
    with pytest.raises(StateValidationError, match="trace"):
        DensityMatrix(np.eye(4))
    with pytest.raises(StateValidationError):
        DensityMatrix(np.eye(3) / 3)


def test_density_matrix_is_read_only():
    rho = bell()
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1


def test_json_round_trip_bit_exact(rng):
    for _ in range(10):
        rho = random_density(rng)
        back = DensityMatrix.from_json(rho.to_json())
        np.testing.assert_array_equal(back.mat, rho.mat)


def test_json_schema_fields():
    data = json.loads(bell().to_json())
    assert set(data) == {"basis", "re", "im"}
    assert data["basis"] == list(BASIS) == ["VV", "VH", "HV", "HH"]


def test_json_rejects_wrong_basis_order():
    data = bell().to_dict()
    data["basis"] = ["VV", "HV", "VH", "HH"]
    with pytest.raises(StateValidationError, match="basis"):
        DensityMatrix.from_dict(data)
    with pytest.raises(StateValidationError):
        DensityMatrix.from_json("{not json")
    with pytest.raises(StateValidationError):
        DensityMatrix.from_dict({"basis": list(BASIS), "re": [[1]]})


def test_bell_names():
    for name in ("phi+", "phi-", "psi+", "psi-"):
        assert bell(name).purity == pytest.approx(1.0)
    with pytest.raises(StateValidationError):
        bell("omega")
    assert states.product("HV")[2, 2] == 1
