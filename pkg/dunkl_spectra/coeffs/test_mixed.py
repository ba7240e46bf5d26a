import json
import math

import numpy as np
import pytest

from ..errors import DegeneracyError, DomainError
from .matrix import CoeffFamily, Method
from .mixed import (
    chat_coeff,
    chat_matrix,
    cprime_by_expansion,
    cprime_coeff,
    cprime_matrix,
    telescope_check,
)
from .params import MixedCase, MixedParams, TParams
from .tform import t_matrix_closed

CHAT_CASES = {
    "all_equal": MixedParams(0.7, 0.7, 0.7),
    "sigma_eq_theta": MixedParams(0.5, 1.2, 0.5),
    "tau_eq_theta": MixedParams(1.3, 0.4, 0.4),
    "generic": MixedParams(0.9, 0.6, 0.3),
    "generic_negative_difference": MixedParams(0.2, 0.7, 0.6),
}

CPRIME_CASES = {
    "all_equal": MixedParams(0.5, 0.5, 0.5),
    "sigma_eq_theta": MixedParams(0.5, 1.0, 0.5),
    "tau_eq_theta": MixedParams(1.2, 0.5, 0.5),
    "theta_eq_tau_plus_1": MixedParams(1.0, -0.4, 0.6),
    "generic": MixedParams(0.9, 0.6, 0.3),
}


def test_case_tags():
    assert CPRIME_CASES["all_equal"].case is MixedCase.ALL_EQUAL
    assert CPRIME_CASES["sigma_eq_theta"].case is MixedCase.SIGMA_EQ_THETA
    assert CPRIME_CASES["tau_eq_theta"].case is MixedCase.TAU_EQ_THETA
    assert CPRIME_CASES["theta_eq_tau_plus_1"].case is MixedCase.THETA_EQ_TAU_PLUS_1
    assert CPRIME_CASES["generic"].case is MixedCase.GENERIC
    assert MixedParams(1.0, 2.0, 0.25).v == pytest.approx(2.5)


def test_chat_examples():
    params = MixedParams(1.0, 1.0, 1.0)
    for k in range(6):
        for l in range(6):
            assert chat_coeff(params, k, l) == (1.0 if k == l else 0.0)
    assert chat_coeff(MixedParams(0.0, 1.0, 0.0), 0, 0) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert chat_coeff(MixedParams(0.0, 1.0, 0.0), 4, 2) == 0.0
    assert chat_coeff(MixedParams(0.3, 1.0, 0.6), 1, 2) == 0.0


def test_chat_triangular_when_sigma_equals_theta():
    entries = chat_matrix(CHAT_CASES["sigma_eq_theta"], 16).entries
    assert np.all(np.tril(entries, -1) == 0.0)


def test_chat_symmetry():
    params = MixedParams(0.9, 0.6, 0.3)
    for k in range(12):
        for l in range(k % 2, 12, 2):
            assert chat_coeff(params, k, l) == pytest.approx(chat_coeff(params.swapped(), l, k), rel=1e-12, abs=1e-15)


def test_chat_shift_identity():
    params = MixedParams(0.9, 0.6, 0.3)
    for k in range(1, 12, 2):
        for l in range(1, 12, 2):
            assert chat_coeff(params, k, l) == pytest.approx(
                chat_coeff(params.shifted(), k - 1, l - 1), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("name", sorted(CHAT_CASES))
def test_chat_against_quadrature(name):
    params = CHAT_CASES[name]
    closed = chat_matrix(params, 21).entries
    oracle = chat_matrix(params, 21, method="quadrature").entries
    assert np.abs(closed - oracle).max() <= 1e-8, f"{name}: closed form disagrees with quadrature"


def test_chat_reduces_to_t_coefficients():
    # <phi_{sigma,k}, phi_{sigma,l}>_{sigma-u} is c_{k,l}
    sigma, u = 1.1, 0.3
    closed = t_matrix_closed(TParams(sigma, u), 14).entries
    chat = chat_matrix(MixedParams(sigma, sigma, sigma - u), 14).entries
    np.testing.assert_allclose(chat, closed, rtol=1e-10, atol=1e-13)


def test_cprime_examples():
    params = MixedParams(0.5, 0.5, 0.5)
    assert cprime_coeff(params, 0, 1) == pytest.approx(1.0, rel=1e-14)
    assert cprime_coeff(params, 2, 1) == 0.0
    assert cprime_coeff(params, 1, 2) == 0.0
    assert cprime_coeff(params, 2, 4) == 0.0


@pytest.mark.parametrize("name", sorted(CPRIME_CASES))
def test_cprime_against_quadrature_and_expansion(name):
    params = CPRIME_CASES[name]
    closed = cprime_matrix(params, 22).entries
    oracle = cprime_matrix(params, 22, method="quadrature").entries
    expansion = cprime_matrix(params, 22, method="expansion").entries
    # theta = tau + 1 expands over quadrature c-hat values
    expansion_tol = 1e-8 if params.case is MixedCase.THETA_EQ_TAU_PLUS_1 else 1e-10
    assert np.abs(closed - oracle).max() <= 1e-8, f"{name}: closed form disagrees with quadrature"
    assert np.abs(closed - expansion).max() <= expansion_tol, f"{name}: closed form disagrees with expansion"


def test_cprime_vanishing_patterns():
    N = 24
    k, l = np.indices((N, N))
    m, n = k // 2, (l - 1) // 2
    structural = (k % 2 == 1) | (l % 2 == 0)
    for name, params in CPRIME_CASES.items():
        entries = cprime_matrix(params, N).entries
        assert np.all(entries[structural] == 0.0), name
    for name in ("all_equal", "sigma_eq_theta"):
        entries = cprime_matrix(CPRIME_CASES[name], N).entries
        assert np.all(entries[~structural & (m > n)] == 0.0), name
    entries = cprime_matrix(CPRIME_CASES["theta_eq_tau_plus_1"], N).entries
    assert np.all(entries[~structural & (m < n)] == 0.0)


def test_scaling_laws():
    for params in CHAT_CASES.values():
        chat_1 = chat_matrix(params, 12).entries
        chat_4 = chat_matrix(params.with_scale(4.0), 12).entries
        np.testing.assert_allclose(chat_4, 4.0 ** (params.v / 2) * chat_1, rtol=1e-12, atol=0)
    for params in CPRIME_CASES.values():
        v = params.v
        cprime_1 = cprime_matrix(params, 12).entries
        cprime_4 = cprime_matrix(params.with_scale(4.0), 12).entries
        np.testing.assert_allclose(cprime_4, 4.0 ** ((1 + v) / 2) * cprime_1, rtol=1e-12, atol=0)


def test_degenerate_differences_are_refused():
    with pytest.raises(DegeneracyError):
        chat_coeff(MixedParams(0.0, -1.0, 0.0), 1, 1)
    with pytest.raises(DegeneracyError):
        cprime_coeff(MixedParams(0.5, -0.5, 0.5), 0, 1)
    with pytest.raises(DegeneracyError):
        cprime_coeff(MixedParams(0.5, -0.5 + 1e-11, 0.5), 0, 1)
    with pytest.raises(DomainError):
        chat_coeff(MixedParams(-0.7, 0.5, 0.5), 0, 0)


def test_cprime_expansion_single_entry():
    params = MixedParams(0.9, 0.6, 0.3)
    assert cprime_by_expansion(params, 4, 7) == pytest.approx(cprime_coeff(params, 4, 7), rel=1e-10)


def test_expansion_when_chat_closed_form_is_excluded():
    params = CPRIME_CASES["theta_eq_tau_plus_1"]
    with pytest.raises(DegeneracyError):
        chat_coeff(params, 0, 0)
    assert cprime_by_expansion(params, 6, 3) == pytest.approx(cprime_coeff(params, 6, 3), rel=1e-8)
    assert cprime_by_expansion(params, 2, 5) == pytest.approx(0.0, abs=1e-10), "vanishes for m < n"


@pytest.mark.parametrize("t, p", [(1.0, 3), (0.5, 0), (-0.3, 5), (2.7, 40)])
def test_telescope_identity(t, p):
    assert telescope_check(t, p)


def test_telescope_rejects_poles():
    with pytest.raises(DomainError):
        telescope_check(-2.0, 3)


def test_coeff_matrix_serialization(tmp_path):
    matrix = t_matrix_closed(TParams(1.0, 0.5), 6)
    data = matrix.to_json()
    assert data["schema"] == 1
    assert data["family"] == CoeffFamily.C.value
    assert data["method"] == Method.CLOSED_FORM.value
    assert data["params"] == {"sigma": 1.0, "u": 0.5, "s": 1.0, "odd_only": False}
    assert json.loads(matrix.dumps())["entries"][0][0] == pytest.approx(2 / math.sqrt(math.pi))
    path = matrix.to_csv(tmp_path / "c.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "# schema: 1"
    assert any(line.startswith("# params:") for line in lines)
    np.testing.assert_allclose(np.loadtxt(path, delimiter=","), matrix.entries, rtol=1e-16)
