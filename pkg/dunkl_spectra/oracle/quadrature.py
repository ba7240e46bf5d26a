"""Tanh-sinh quadrature oracle for weighted inner products.

    <f, g>_kappa = int f(x) g(x) |x|^{2 kappa} dx

Integrands are only evaluated at x > 0. Integrals over the line are folded
onto (0, x_max) with the declared parity of f g; a product of odd parity is
zero without evaluation.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit

from ..basis import BasisParams, hermite_table
from ..config import QUADRATURE
from ..errors import ConvergenceError, DomainError
from ..specfun import log_gamma

logger = logging.getLogger(__name__)


def gaussian_radius(kappa: float, s: float, abs_tol: float, degree: int = 0) -> float:
    """Radius beyond which exp(-s x^2) x^{2 kappa + 2} < abs_tol / 10.

    degree is the largest basis index in the integrand; the oscillatory region
    of phi_k reaches out to ((2k + 2 kappa + 2)/s)^{1/2}.
    """
    target = math.log(abs_tol / 10.0)
    power = 2 * kappa + 2

    def excess(x):
        return -s * x * x + power * math.log(x) - target

    peak = math.sqrt(max(power, 1e-12) / (2 * s))
    radius = peak
    if excess(peak) > 0:
        upper = 2 * peak + 1.0
        while excess(upper) > 0:
            upper *= 2
        radius = brentq(excess, peak, upper)
    turning = math.sqrt((2 * degree + 2 * kappa + 2) / s) + math.sqrt(math.log(10.0 / abs_tol) / s)
    return max(radius, turning)


@dataclass(frozen=True)
class QuadratureSpec:
    """Weight exponent, domain and tolerances of one quadrature"""
    kappa: float
    half_line: bool = False
    abs_tol: float = QUADRATURE.abs_tol
    rel_tol: float = QUADRATURE.rel_tol
    x_max: Optional[float] = None
    s: float = 1.0
    degree: int = 0

    def __post_init__(self):
        if not self.kappa > -0.5:
            raise DomainError(f"Weight exponent must exceed -1/2, got {self.kappa}")
        if not self.s > 0:
            raise DomainError(f"Gaussian scale must be positive, got {self.s}")
        if self.x_max is None:
            radius = gaussian_radius(self.kappa, self.s, self.abs_tol, self.degree)
            object.__setattr__(self, "x_max", radius)


@lru_cache(maxsize=None)
def unit_nodes(level: int, t_max: float = QUADRATURE.t_max):
    """Read-only tanh-sinh nodes and weights on (0, 1) with step 2^-level."""
    h = 2.0 ** (-level)
    n = int(round(t_max / h))
    t = h * np.arange(-n, n + 1)
    arg = np.pi * np.sinh(t)
    nodes = expit(arg)
    weights = np.pi * np.cosh(t) * nodes * expit(-arg) * h
    keep = (nodes > 0) & (weights > 0)
    nodes, weights = nodes[keep], weights[keep]
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _folded(func: Callable, parity: Optional[int], half_line: bool) -> Callable:
    if half_line:
        return func
    if parity is None:
        return lambda x: func(x) + func(-x)
    return lambda x: 2.0 * func(x)


def _levels(spec: QuadratureSpec, integrand: Callable):
    for level in range(QUADRATURE.max_level + 1):
        nodes, weights = unit_nodes(level)
        x = spec.x_max * nodes
        w = spec.x_max * weights * x ** (2 * spec.kappa)
        yield level, np.tensordot(integrand(x), w, axes=([-1], [0]))


def refinement_sequence(func: Callable, spec: QuadratureSpec, parity: Optional[int] = None) -> List[float]:
    """Estimates of int func(x)|x|^{2 kappa} dx at every refinement level."""
    integrand = _folded(func, parity, spec.half_line)
    return [float(value) for _, value in _levels(spec, integrand)]


def _converge(spec: QuadratureSpec, integrand: Callable, label: str):
    previous = None
    change = math.inf
    for level, estimate in _levels(spec, integrand):
        if previous is not None:
            change = float(np.nanmax(np.abs(estimate - previous)))
            scale = float(np.nanmax(np.abs(estimate))) if np.size(estimate) else 0.0
            if level >= 3 and change <= max(spec.abs_tol, spec.rel_tol * scale):
                logger.debug("%s converged at level %d (change %.3e)", label, level, change)
                return estimate
        previous = estimate
    raise ConvergenceError(
        f"{label} did not converge: last refinement changed the result by {change:.3e}"
    )


def integrate(func: Callable, spec: QuadratureSpec, parity: Optional[int] = None) -> float:
    """int func(x) |x|^{2 kappa} dx over the line, or over (0, inf) if half_line.

    Args:
        func: Vectorized callable, evaluated only at x > 0
        spec: Quadrature rule settings
        parity: +1 or -1 if func has that parity, None to evaluate func(-x) too

    Returns:
        float: The integral

    Raises:
        ConvergenceError: If two successive levels disagree beyond tolerance
    """
    if parity == -1 and not spec.half_line:
        return 0.0
    return float(_converge(spec, _folded(func, parity, spec.half_line), "integral"))


def integrate_table(integrand: Callable, spec: QuadratureSpec, label: str = "table") -> np.ndarray:
    """Array of int integrand(x)[..., i] |x|^{2 kappa} dx over (0, x_max).

    integrand maps the node vector to an array whose last axis runs over the
    nodes. Every entry must meet the tolerances of spec.

    Raises:
        ConvergenceError: If two successive levels disagree beyond tolerance
    """
    return np.asarray(_converge(spec, integrand, label))


def inner_weighted(f: Callable, g: Callable, spec: QuadratureSpec,
                   parity_f: Optional[int] = None, parity_g: Optional[int] = None) -> float:
    """<f, g>_kappa with kappa = spec.kappa."""
    parity = parity_f * parity_g if parity_f is not None and parity_g is not None else None
    return integrate(lambda x: f(x) * g(x), spec, parity)


def gram_matrix(row_params: BasisParams, col_params: BasisParams, kappa: float,
                rows: int, cols: Optional[int] = None, x_power: int = 0,
                abs_tol: float = QUADRATURE.abs_tol, rel_tol: float = QUADRATURE.rel_tol) -> np.ndarray:
    """Oracle matrix G[k, l] = <phi^{row}_k, x^{x_power} phi^{col}_l>_kappa over the line.

    Entries whose total parity is odd are exactly zero. Rows or columns the
    bases do not support come back as NaN.
    """
    cols = rows if cols is None else cols
    spec = QuadratureSpec(kappa=kappa, half_line=True, abs_tol=abs_tol, rel_tol=rel_tol,
                          s=min(row_params.s, col_params.s), degree=max(rows, cols))
    logger.debug("gram matrix %dx%d, kappa=%g, x_max=%.2f", rows + 1, cols + 1, kappa, spec.x_max)

    def integrand(x):
        left = hermite_table(row_params, rows, x)
        right = hermite_table(col_params, cols, x) * x ** x_power
        return left[:, None, :] * right[None, :, :]

    half = _converge(spec, integrand, "gram matrix")
    k = np.arange(rows + 1)[:, None]
    l = np.arange(cols + 1)[None, :]
    even = (k + l + x_power) % 2 == 0
    return np.where(even, 2.0 * half, 0.0)


def gaussian_moment(kappa: float, s: float) -> float:
    """int exp(-s x^2) |x|^{2 kappa} dx = s^{-(2 kappa+1)/2} Gamma(kappa+1/2)."""
    if not kappa > -0.5 or not s > 0:
        raise DomainError(f"gaussian_moment needs kappa > -1/2 and s > 0, got ({kappa}, {s})")
    return math.exp(-(2 * kappa + 1) / 2 * math.log(s) + log_gamma(kappa + 0.5))
