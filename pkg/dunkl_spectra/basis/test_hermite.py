import math

import numpy as np
import pytest

from ..errors import DomainError
from .hermite import (
    apply_ladder,
    dunkl_derivative,
    evaluate,
    hermite_derivative,
    hermite_derivative_table,
    hermite_p,
    hermite_table,
    ladder_coeff,
    phi,
    xinv_coeffs,
)
from .params import BasisParams

GRID = np.linspace(-4.0, 4.0, 81)


def test_seed_constant():
    params = BasisParams(sigma=0.5, s=1.0)
    assert hermite_p(params, 0, 3.7) == pytest.approx(1.0, rel=1e-14)
    assert phi(params, 0, 0.0) == pytest.approx(1.0, rel=1e-14)


def test_second_polynomial_matches_hand_expansion():
    # sigma = 1/2, s = 1: p_1 = x, p_2 = x^2 - 1
    params = BasisParams(sigma=0.5, s=1.0)
    assert hermite_p(params, 1, 2.0) == pytest.approx(2.0, rel=1e-14)
    assert hermite_p(params, 2, 2.0) == pytest.approx(3.0, rel=1e-14)
    assert hermite_p(params, 2, 1.0) == pytest.approx(0.0, abs=1e-14)


def test_odd_functions_vanish_at_origin():
    for sigma in (-0.4, 0.5, 2.7):
        params = BasisParams(sigma=sigma, s=1.3)
        for k in (1, 3, 11):
            assert hermite_p(params, k, 0.0) == 0.0
            assert phi(params, k, 0.0) == 0.0


def test_hermite_value_record():
    value = evaluate(BasisParams(1.0, 2.0), 4, 0.7)
    assert value.phi_value == pytest.approx(value.p_value * math.exp(-2.0 * 0.49 / 2), rel=1e-13)


def test_parity():
    params = BasisParams(sigma=0.8, s=1.0)
    table = hermite_table(params, 60, GRID)
    mirrored = hermite_table(params, 60, -GRID)
    for k in range(61):
        np.testing.assert_allclose(mirrored[k], (-1) ** k * table[k], rtol=1e-12, atol=1e-300)


def test_leading_coefficient_positive():
    params = BasisParams(sigma=0.3, s=1.0)
    for k in range(12):
        assert hermite_p(params, k, 50.0) > 0, f"p_{k} must grow positively"


def test_odd_sector_only_basis():
    params = BasisParams(sigma=-1.2, s=1.0)
    assert not params.full_basis
    with pytest.raises(DomainError):
        phi(params, 2, 0.3)
    shifted = params.shifted()
    assert phi(params, 3, 0.9) == pytest.approx(0.9 * phi(shifted, 2, 0.9), rel=1e-14)


def test_invalid_basis_params():
    with pytest.raises(DomainError):
        BasisParams(sigma=0.0, s=0.0)
    with pytest.raises(DomainError):
        BasisParams(sigma=-1.5, s=1.0)


@pytest.mark.parametrize("k, expected", [(2, 2.0), (1, math.sqrt(6.0))])
def test_ladder_coeff_examples(k, expected):
    params = BasisParams(sigma=1.0, s=1.0)
    assert ladder_coeff(params, k, "annihilate") == pytest.approx(expected, rel=1e-15)
    assert ladder_coeff(params, k, "create") == pytest.approx(expected, rel=1e-15)


def test_ladder_coeff_rejects_ground_state():
    with pytest.raises(DomainError):
        ladder_coeff(BasisParams(1.0, 1.0), 0)


@pytest.mark.parametrize("sigma", [0.0, 0.5, 1.0, 2.7])
def test_ladder_consistency(sigma):
    params = BasisParams(sigma=sigma, s=1.4)
    grid = np.linspace(-3.0, 3.0, 61)
    for k in range(1, 21):
        kappa = ladder_coeff(params, k)
        created = apply_ladder(params, k, grid, "create")
        np.testing.assert_allclose(created, kappa * phi(params, k, grid), atol=1e-8)
        lowered = apply_ladder(params, k, grid, "annihilate")
        np.testing.assert_allclose(lowered, kappa * phi(params, k - 1, grid), atol=1e-8)


def test_derivative_matches_finite_differences():
    params = BasisParams(sigma=0.7, s=1.0)
    grid = np.linspace(-3.0, 3.0, 31)
    h = 1e-5
    for k in range(0, 15):
        numeric = (phi(params, k, grid + h) - phi(params, k, grid - h)) / (2 * h)
        np.testing.assert_allclose(hermite_derivative(params, k, grid), numeric, atol=1e-6)


def test_derivative_table_rows():
    params = BasisParams(sigma=1.5, s=0.7)
    values, slopes = hermite_derivative_table(params, 9, GRID)
    assert values.shape == slopes.shape == (10, GRID.size)
    for k in (0, 4, 9):
        np.testing.assert_allclose(values[k], phi(params, k, GRID), rtol=1e-13, atol=1e-15)
        np.testing.assert_allclose(slopes[k], hermite_derivative(params, k, GRID), rtol=1e-13, atol=1e-15)


def test_dunkl_derivative_at_origin_is_finite():
    params = BasisParams(sigma=0.5, s=1.0)
    # phi_1 = x exp(-x^2/2): T phi_1(0) = (1 + 2 sigma) phi_1'(0) = 2
    assert dunkl_derivative(params, 1, 0.0) == pytest.approx(2.0, rel=1e-14)


def test_x_conjugation():
    sigma = 1.3
    upper = BasisParams(sigma=sigma, s=0.9)
    lower = BasisParams(sigma=sigma - 1.0, s=0.9)
    grid = np.linspace(-3.5, 3.5, 57)
    for k in range(0, 20, 2):
        np.testing.assert_allclose(grid * phi(upper, k, grid), phi(lower, k + 1, grid), atol=1e-11)


def test_xinv_coeffs_first_index():
    coeffs = xinv_coeffs(BasisParams(0.5, 1.0), 1)
    assert coeffs.shape == (1,)
    assert coeffs[0] == pytest.approx(1.0, rel=1e-14)


def test_xinv_coeffs_signs_alternate():
    coeffs = xinv_coeffs(BasisParams(0.9, 2.0), 9)
    m = 4
    for i, value in enumerate(coeffs):
        assert np.sign(value) == (-1) ** (m - i)


@pytest.mark.parametrize("sigma", [-0.4, 0.5, 2.0])
def test_xinv_coeffs_pointwise(sigma):
    params = BasisParams(sigma=sigma, s=1.0)
    x0 = 1.3
    for k in range(1, 22, 2):
        coeffs = xinv_coeffs(params, k)
        expansion = sum(a * hermite_p(params, 2 * i, x0) for i, a in enumerate(coeffs))
        target = hermite_p(params, k, x0) / x0
        assert expansion == pytest.approx(target, rel=1e-10, abs=1e-10), f"k={k}"


def test_xinv_coeffs_rejects_even_index():
    with pytest.raises(DomainError):
        xinv_coeffs(BasisParams(0.5, 1.0), 4)
