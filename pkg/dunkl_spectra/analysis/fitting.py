"""Empirical stand-ins for the existential constants of the eigenvalue bounds.

The fitted values are regression anchors for a given truncation. They make
no claim about optimal constants.
"""
import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..coeffs import CoeffMatrix, MixedParams, TParams, cprime_matrix, t_matrix_closed
from ..config import FITS, SPECTRA
from ..errors import ConvergenceError, InsufficientDataError
from ..specfun import gautschi_sweep, weierstrass_sweep
from .regions import require_theorem_V

logger = logging.getLogger(__name__)

MIN_DECAY_ENTRIES = 20
ENVELOPE_BINS = 16


@dataclass(frozen=True)
class FitReport:
    """One fitted constant with the index window it was fitted on.

    Args:
        constant_name: One of D, C, E, omega, C0, C1
        fitted_value: The fitted constant
        window: (first, last) index used
        residual: Spread or misfit of the quantity over the window
        details: Extra figures of the individual fit
    """
    constant_name: str
    fitted_value: float
    window: Tuple[int, int]
    residual: float
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        data = asdict(self)
        data["window"] = list(self.window)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _sector(params: TParams, N: int) -> np.ndarray:
    k = np.arange(N)
    return k[k % 2 == 1] if params.odd_only else k


def diagonal_form_values(params: TParams, K: int) -> np.ndarray:
    """t(phi_k) = c_{k,k} for k = 0..K (NaN on an absent even sector)."""
    diag = np.diag(t_matrix_closed(params, K + 1).entries).copy()
    if params.odd_only:
        diag[0::2] = np.nan
    return diag


def fit_lower_constant(params: TParams, K: int = 200) -> FitReport:
    """D-hat = min_k t(phi_k) (k+1)^u s^-u over k <= K.

    Raises:
        ConvergenceError: When the minimum is not positive
    """
    k = _sector(params, K + 1)
    values = diagonal_form_values(params, K)[k] * (k + 1.0) ** params.u * params.s ** (-params.u)
    fitted = float(np.min(values))
    if not fitted > 0:
        raise ConvergenceError(f"Lower constant is not positive for {params}: {fitted}")
    tail = values[k >= K // 2]
    residual = float(np.max(tail) - np.min(tail)) if tail.size else 0.0
    logger.info("D-hat = %.6g over k <= %d for %s", fitted, K, params)
    return FitReport("D", fitted, (int(k[0]), int(K)), residual,
                     {"argmin": int(k[np.argmin(values)])})


def _unit_trials(size: int, trials: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((trials, size))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def _penalised_maximum(matrix: np.ndarray, trials: int, seed: int):
    """Top Rayleigh quotient of a symmetric matrix: random unit trials and the top eigenvector."""
    vectors = _unit_trials(matrix.shape[0], trials, seed)
    quotients = np.einsum("ti,ij,tj->t", vectors, matrix, vectors)
    best_random = float(np.max(quotients)) if trials else -np.inf
    top = float(np.linalg.eigvalsh(matrix)[-1])
    return max(top, best_random), best_random


def fit_form_bound(params: TParams, epsilon: float = FITS.epsilon, trials: int = FITS.trials,
                   N: int = SPECTRA.default_order, seed: int = FITS.seed) -> FitReport:
    """C-hat = max over unit t of (t'Ct - eps s^(u-1) j(t)) s^-u, clamped at 0."""
    k = _sector(params, N)
    c = t_matrix_closed(params, N).entries[np.ix_(k, k)]
    j = (2 * k + 1 + 2 * params.sigma) * params.s
    penalised = c - epsilon * params.s ** (params.u - 1) * np.diag(j)
    top, best_random = _penalised_maximum(penalised, trials, seed)
    scale = params.s ** (-params.u)
    fitted = max(top * scale, 0.0)
    logger.info("C-hat = %.6g at epsilon=%g, N=%d for %s", fitted, epsilon, N, params)
    return FitReport("C", fitted, (0, N - 1), (top - best_random) * scale,
                     {"epsilon": epsilon, "trials": trials, "seed": seed, "raw": top * scale})


def mixed_diagonal(params: MixedParams, N: int) -> np.ndarray:
    """(2k+1+2 varsigma_k) s, varsigma_k = sigma for even k and tau for odd k."""
    k = np.arange(N)
    varsigma = np.where(k % 2 == 0, params.sigma, params.tau)
    return (2 * k + 1 + 2 * varsigma) * params.s


def fit_tprime_bound(params: MixedParams, u: float, epsilon: float = FITS.epsilon,
                     trials: int = FITS.trials, N: int = 64, seed: int = FITS.seed) -> FitReport:
    """E-hat = max over unit t of (|t'(phi)| - eps s^((v-1)/2) j(phi)) s^-((1+v)/2), clamped at 0.

    Raises:
        HypothesisError: When (sigma, tau, theta, u) fail the two-exponent hypotheses
    """
    require_theorem_V(params.sigma, params.tau, params.theta, u)
    cprime = cprime_matrix(params, N).entries
    symmetric = 0.5 * (cprime + cprime.T)
    v = params.v
    penalised = symmetric - epsilon * params.s ** ((v - 1) / 2) * np.diag(mixed_diagonal(params, N))
    top, best_random = _penalised_maximum(penalised, trials, seed)
    scale = params.s ** (-(1 + v) / 2)
    fitted = max(top * scale, 0.0)
    logger.info("E-hat = %.6g at epsilon=%g, N=%d for %s", fitted, epsilon, N, params)
    return FitReport("E", fitted, (0, N - 1), (top - best_random) * scale,
                     {"epsilon": epsilon, "trials": trials, "seed": seed, "raw": top * scale,
                      "case": params.case.value})


def _envelope(x: np.ndarray, y: np.ndarray, bins: int):
    """Largest y in each occupied bin of equal width in x."""
    edges = np.linspace(x.min(), x.max(), bins + 1)
    which = np.clip(np.digitize(x, edges) - 1, 0, bins - 1)
    top = [np.flatnonzero(which == b)[np.argmax(y[which == b])] for b in np.unique(which)]
    return x[top], y[top]


def fit_decay_exponent(matrix: CoeffMatrix, min_index: Optional[int] = None) -> FitReport:
    """Least-squares omega-hat of the upper envelope log|entry| <= const - omega log((m+1)(n+1)).

    Nonzero entries with both indices >= min_index are binned by log((m+1)(n+1))
    (m, n the half indices); the largest |entry| of each bin is fitted.

    Raises:
        InsufficientDataError: With fewer than 20 usable entries
    """
    min_index = FITS.min_decay_index if min_index is None else min_index
    entries = np.abs(matrix.entries)
    floor = np.finfo(float).eps * float(np.max(entries)) if entries.size else 0.0
    k, l = np.nonzero(entries > floor)
    keep = (k >= min_index) & (l >= min_index)
    k, l = k[keep], l[keep]
    if k.size < MIN_DECAY_ENTRIES:
        raise InsufficientDataError(
            f"Decay fit needs {MIN_DECAY_ENTRIES} nonzero entries with index >= {min_index}, got {k.size}"
        )
    x, y = _envelope(np.log((k // 2 + 1.0) * (l // 2 + 1.0)), np.log(entries[k, l]), ENVELOPE_BINS)
    if x.size < 3:
        raise InsufficientDataError(f"Decay fit needs 3 occupied envelope bins, got {x.size}")
    design = np.column_stack([np.ones_like(x), -x])
    (intercept, omega), *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.sqrt(np.mean((design @ np.array([intercept, omega]) - y) ** 2)))
    logger.info("omega-hat = %.4f from %d envelope points of %d %s entries",
                omega, x.size, k.size, matrix.family.value)
    return FitReport("omega", float(omega), (int(min_index), matrix.order - 1), residual,
                     {"family": matrix.family.value, "entries": int(k.size),
                      "envelope_points": int(x.size), "intercept": float(intercept)})


def _sweep_report(name: str, values: np.ndarray, first: int, t: float) -> FitReport:
    upper, lower = float(np.max(values)), float(np.min(values))
    return FitReport(name, upper, (first, first + values.size - 1), upper - lower,
                     {"t": t, "lower": lower, "last": float(values[-1])})


def fit_weierstrass_constant(t: float, p_max: int = 10_000) -> FitReport:
    """C0 = max_p prod_{i<=p}(1 - t/i)(p+1)^t for 0 < t < 1; details carry the lower end."""
    return _sweep_report("C0", weierstrass_sweep(t, p_max), 1, t)


def fit_gautschi_constant(t: float, p_max: int = 10_000) -> FitReport:
    """C1 = max_p Gamma(p+1)/Gamma(p+t) (p+1)^(t-1) for t > 0."""
    return _sweep_report("C1", gautschi_sweep(t, p_max), 0, t)
