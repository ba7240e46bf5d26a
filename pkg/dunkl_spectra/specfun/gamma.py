"""Log-domain Gamma kernel.

Every closed-form coefficient of the package is a product of Gamma ratios. They
are evaluated here as sums of log-gammas with a separately tracked sign and
exponentiated once at the end.
"""
import math
from enum import Enum
from typing import Iterable, Tuple

import numpy as np

from ..errors import DomainError

# 13-term Lanczos approximation, g = 6.024680040776729583740234375, in the
# exp(g)-scaled form used by cephes and Boost. Descending powers of x; the
# denominator is x(x+1)...(x+11).
LANCZOS_G = 6.024680040776729583740234375
LANCZOS_NUM = np.array([
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
])
LANCZOS_DEN = np.array([
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
])
LOG_PI = math.log(math.pi)


class ProductForm(Enum):
    """Sign of the factors in a partial product"""
    ONE_MINUS = "one_minus"
    ONE_PLUS = "one_plus"


def _lanczos_sum(x: np.ndarray) -> np.ndarray:
    small = x < 5.0
    out = np.empty_like(x)
    if np.any(small):
        xs = x[small]
        out[small] = np.polyval(LANCZOS_NUM, xs) / np.polyval(LANCZOS_DEN, xs)
    if np.any(~small):
        z = 1.0 / x[~small]
        out[~small] = np.polyval(LANCZOS_NUM[::-1], z) / np.polyval(LANCZOS_DEN[::-1], z)
    return out


def log_gamma(x):
    """Natural log of Gamma for x > 0.

    Args:
        x: Scalar or array, every entry strictly positive

    Returns:
        float or np.ndarray: ln Gamma(x), exactly 0 at x = 1 and x = 2

    Raises:
        DomainError: If any entry is <= 0
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    flat = np.atleast_1d(arr).ravel()
    result = (flat - 0.5) * (np.log(flat + LANCZOS_G - 0.5) - 1.0) + np.log(_lanczos_sum(flat))
    result[(flat == 1.0) | (flat == 2.0)] = 0.0
    if arr.ndim == 0:
        return float(result[0])
    return result.reshape(arr.shape)


def log_abs_gamma(x):
    """Return (ln|Gamma(x)|, sign Gamma(x)) for real x off the poles.

    Accepts scalars or arrays; negative arguments go through the reflection
    Gamma(x) Gamma(1-x) = pi / sin(pi x).

    Raises:
        DomainError: If any entry is a non-positive integer
    """
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr).ravel()
    if np.any((flat <= 0) & (flat == np.floor(flat))):
        raise DomainError(f"Gamma has a pole at {x!r}")
    positive = flat > 0
    log_value = np.empty_like(flat)
    sign = np.ones_like(flat)
    if np.any(positive):
        log_value[positive] = log_gamma(flat[positive])
    if np.any(~positive):
        neg = flat[~positive]
        sin_pi_x = np.sin(np.pi * neg)
        log_value[~positive] = LOG_PI - np.log(np.abs(sin_pi_x)) - log_gamma(1.0 - neg)
        sign[~positive] = np.sign(sin_pi_x)
    if arr.ndim == 0:
        return float(log_value[0]), float(sign[0])
    return log_value.reshape(arr.shape), sign.reshape(arr.shape)


def signed_log_gamma_ratio(numerator: Iterable[float], denominator: Iterable[float] = ()) -> Tuple[float, float]:
    """ln|prod Gamma(a) / prod Gamma(b)| and its sign."""
    log_value = 0.0
    sign = 1.0
    for a in numerator:
        lg, sg = log_abs_gamma(a)
        log_value += lg
        sign *= sg
    for b in denominator:
        lg, sg = log_abs_gamma(b)
        log_value -= lg
        sign *= sg
    return log_value, sign


def gamma_ratio(p: int, t: float) -> float:
    """Gamma(p+1) / Gamma(p+t) via a single exponential."""
    if p < 0 or int(p) != p:
        raise DomainError(f"gamma_ratio requires a nonnegative integer p, got {p!r}")
    if not t > 0:
        raise DomainError(f"gamma_ratio requires t > 0, got {t!r}")
    if t == 1:
        return 1.0
    return math.exp(log_gamma(p + 1.0) - log_gamma(p + t))


def _log_factors(t: float, p: int, form: ProductForm) -> np.ndarray:
    i = np.arange(1, p + 1, dtype=float)
    if form is ProductForm.ONE_MINUS:
        return np.log1p(-t / i)
    return np.log1p(t / i)


def _as_form(form) -> ProductForm:
    try:
        return form if isinstance(form, ProductForm) else ProductForm(form)
    except ValueError:
        raise DomainError(f"Unknown product form: {form}") from None


def partial_product(t: float, p: int, form="one_minus") -> float:
    """prod_{i=1}^{p} (1 -+ t/i), accumulated as a sum of logs.

    Raises:
        DomainError: For form one_minus with t outside (0, 1), or p < 0
    """
    form = _as_form(form)
    if p < 0:
        raise DomainError(f"partial_product requires p >= 0, got {p}")
    if form is ProductForm.ONE_MINUS and not 0 < t < 1:
        raise DomainError(f"one_minus partial product requires 0 < t < 1, got {t}")
    if p == 0:
        return 1.0
    return float(math.exp(math.fsum(_log_factors(t, p, form))))


def weierstrass_sweep(t: float, p_max: int) -> np.ndarray:
    """prod_{i<=p}(1 - t/i) * (p+1)^t for p = 1..p_max."""
    if not 0 < t < 1:
        raise DomainError(f"weierstrass_sweep requires 0 < t < 1, got {t}")
    logs = np.cumsum(_log_factors(t, p_max, ProductForm.ONE_MINUS))
    p = np.arange(1, p_max + 1, dtype=float)
    return np.exp(logs + t * np.log(p + 1.0))


def gautschi_sweep(t: float, p_max: int) -> np.ndarray:
    """Gamma(p+1)/Gamma(p+t) * (p+1)^(t-1) for p = 0..p_max."""
    if not t > 0:
        raise DomainError(f"gautschi_sweep requires t > 0, got {t}")
    p = np.arange(0, p_max + 1, dtype=float)
    logs = log_gamma(p + 1.0) - log_gamma(p + t) + (t - 1.0) * np.log(p + 1.0)
    return np.exp(logs)
