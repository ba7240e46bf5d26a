"""Generalized Hermite polynomials p_k and functions phi_k = p_k exp(-s x^2/2).

Values are produced by the three-term recursion

    p_k = k^{-1/2} ((2s)^{1/2} x p_{k-1} - (k-1+2 sigma)^{1/2} p_{k-2})    k even
    p_k = (k+2 sigma)^{-1/2} ((2s)^{1/2} x p_{k-1} - (k-1)^{1/2} p_{k-2})  k odd

seeded with p_0 = s^{(2 sigma+1)/4} Gamma(sigma+1/2)^{-1/2} and p_{-1} = 0.
The recursion is run on phi directly, with the Gaussian folded into the seed,
so tables stay bounded.
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import DomainError
from ..specfun import log_gamma
from .params import MAX_INDEX, BasisParams


class LadderDirection(Enum):
    """B lowers the index, B' raises it"""
    ANNIHILATE = "annihilate"
    CREATE = "create"


@dataclass(frozen=True)
class HermiteValue:
    """One evaluated basis element"""
    k: int
    x: float
    p_value: float
    phi_value: float


def _seed(params: BasisParams) -> float:
    sigma, s = params.sigma, params.s
    return math.exp((2 * sigma + 1) / 4 * math.log(s) - 0.5 * log_gamma(sigma + 0.5))


def _recursion_factors(params: BasisParams, k: int):
    """(a_k, b_k) with p_k = a_k ((2s)^{1/2} x p_{k-1} - b_k p_{k-2})"""
    if k % 2 == 0:
        return 1.0 / math.sqrt(k), math.sqrt(k - 1 + 2 * params.sigma)
    return 1.0 / math.sqrt(k + 2 * params.sigma), math.sqrt(k - 1)


def _full_table(params: BasisParams, K: int, x: np.ndarray, gaussian: bool, derivative: bool):
    values = np.zeros((K + 1,) + x.shape)
    slopes = np.zeros((K + 1,) + x.shape) if derivative else None
    root_2s = math.sqrt(2 * params.s)
    weight = np.exp(-0.5 * params.s * x * x) if gaussian else np.ones_like(x)
    values[0] = _seed(params) * weight
    if derivative:
        slopes[0] = -params.s * x * values[0] if gaussian else 0.0
    for k in range(1, K + 1):
        a_k, b_k = _recursion_factors(params, k)
        previous = values[k - 2] if k >= 2 else 0.0
        values[k] = a_k * (root_2s * x * values[k - 1] - b_k * previous)
        if derivative:
            previous_slope = slopes[k - 2] if k >= 2 else 0.0
            slopes[k] = a_k * (root_2s * (values[k - 1] + x * slopes[k - 1]) - b_k * previous_slope)
    return values, slopes


def _table(params: BasisParams, K: int, x, gaussian: bool, derivative: bool = False):
    if K < 0 or K > MAX_INDEX:
        raise DomainError(f"Table order must lie in [0, {MAX_INDEX}], got {K}")
    x = np.asarray(x, dtype=float)
    if params.full_basis:
        return _full_table(params, K, x, gaussian, derivative)
    # odd sector only: phi_{sigma,k} = x phi_{sigma+1,k-1}
    values = np.full((K + 1,) + x.shape, np.nan)
    slopes = np.full((K + 1,) + x.shape, np.nan) if derivative else None
    if K >= 1:
        inner, inner_slopes = _full_table(params.shifted(), K - 1, x, gaussian, derivative)
        values[1::2] = x * inner[0::2]
        if derivative:
            slopes[1::2] = inner[0::2] + x * inner_slopes[0::2]
    return values, slopes


def hermite_table(params: BasisParams, K: int, x) -> np.ndarray:
    """phi_0..phi_K on a grid, shape (K+1,) + x.shape.

    Rows that the basis does not support (even k when sigma <= -1/2) are NaN.
    """
    return _table(params, K, x, gaussian=True)[0]


def hermite_derivative_table(params: BasisParams, K: int, x):
    """(phi_0..phi_K, phi_0'..phi_K') on a grid, each of shape (K+1,) + x.shape."""
    return _table(params, K, x, gaussian=True, derivative=True)


def hermite_p(params: BasisParams, k: int, x):
    """Generalized Hermite polynomial p_k(x)."""
    k = params.check_index(k)
    value = _table(params, k, x, gaussian=False)[0][k]
    return float(value) if np.ndim(value) == 0 else value


def phi(params: BasisParams, k: int, x):
    """Normalized generalized Hermite function phi_k(x)."""
    k = params.check_index(k)
    value = _table(params, k, x, gaussian=True)[0][k]
    return float(value) if np.ndim(value) == 0 else value


def evaluate(params: BasisParams, k: int, x: float) -> HermiteValue:
    k = params.check_index(k)
    return HermiteValue(k=k, x=float(x), p_value=hermite_p(params, k, x), phi_value=phi(params, k, x))


def hermite_derivative(params: BasisParams, k: int, x):
    """phi_k'(x) by differentiating the recursion."""
    k = params.check_index(k)
    value = _table(params, k, x, gaussian=True, derivative=True)[1][k]
    return float(value) if np.ndim(value) == 0 else value


def dunkl_derivative(params: BasisParams, k: int, x):
    """T phi_k: d/dx on even functions, d/dx + 2 sigma/x on odd ones."""
    k = params.check_index(k)
    values, slopes = _table(params, k, x, gaussian=True, derivative=True)
    value, slope = values[k], slopes[k]
    if k % 2 == 0:
        result = slope
    else:
        x_arr = np.asarray(x, dtype=float)
        at_origin = x_arr == 0
        safe_x = np.where(at_origin, 1.0, x_arr)
        # phi_k/x -> phi_k'(0) at the origin for odd k
        result = np.where(at_origin, (1 + 2 * params.sigma) * slope, slope + 2 * params.sigma * value / safe_x)
    return float(result) if np.ndim(result) == 0 else result


def _as_direction(direction) -> LadderDirection:
    if isinstance(direction, LadderDirection):
        return direction
    try:
        return LadderDirection(direction)
    except ValueError:
        raise DomainError(f"Unknown ladder direction: {direction}") from None


def ladder_coeff(params: BasisParams, k: int, direction="annihilate") -> float:
    """Scalar kappa_k with B phi_k = kappa_k phi_{k-1} and B' phi_{k-1} = kappa_k phi_k."""
    _as_direction(direction)
    if int(k) != k or k < 1:
        raise DomainError(f"B phi_0 = 0; ladder coefficients start at k = 1, got {k}")
    if k % 2 == 0:
        return math.sqrt(2 * k * params.s)
    return math.sqrt(2 * (k + 2 * params.sigma) * params.s)


def apply_ladder(params: BasisParams, k: int, x, direction="annihilate"):
    """Pointwise B phi_k (annihilate) or B' phi_{k-1} (create)."""
    direction = _as_direction(direction)
    x_arr = np.asarray(x, dtype=float)
    if direction is LadderDirection.ANNIHILATE:
        return params.s * x_arr * phi(params, k, x_arr) + dunkl_derivative(params, k, x_arr)
    return params.s * x_arr * phi(params, k - 1, x_arr) - dunkl_derivative(params, k - 1, x_arr)


def xinv_coeffs(params: BasisParams, k: int) -> np.ndarray:
    """Coefficients a_i of x^{-1} p_k = sum_{i<=m} a_i p_{2i} for odd k = 2m+1.

    a_i = (-1)^{m-i} (m! Gamma(i+1/2+sigma) s / (i! Gamma(m+3/2+sigma)))^{1/2}
    """
    if int(k) != k or k < 1 or k % 2 == 0:
        raise DomainError(f"x^-1 expansion needs an odd index, got {k}")
    if not params.full_basis:
        raise DomainError("x^-1 expansion targets the even sector, which needs sigma > -1/2")
    m = (int(k) - 1) // 2
    i = np.arange(m + 1, dtype=float)
    sigma = params.sigma
    log_sq = (log_gamma(m + 1.0) + log_gamma(i + 0.5 + sigma) + math.log(params.s)
              - log_gamma(i + 1.0) - log_gamma(m + 1.5 + sigma))
    signs = np.where((m - i) % 2 == 0, 1.0, -1.0)
    return signs * np.exp(0.5 * log_sq)
