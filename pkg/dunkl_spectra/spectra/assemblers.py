"""Truncated matrices of the perturbed Dunkl oscillator forms.

Every matrix lives on the generalized Hermite basis with global index k.
Half-line operators are conjugated to their full-line parity sectors by the
chosen indicial roots, so P and Q reuse the U blocks and W reuses V.
"""
import logging
from typing import Tuple

import numpy as np

from ..analysis import require_theorem_V
from ..coeffs import MixedParams, TParams, cprime_matrix, t_matrix_closed
from ..errors import DomainError
from .base import FormAssembler, OperatorKind, OperatorSpec

logger = logging.getLogger(__name__)

ROOT_TOL = 1e-10


def _require(spec: OperatorSpec, *names: str):
    missing = [name for name in names if getattr(spec, name) is None]
    if missing:
        raise DomainError(f"{spec.kind.value} needs {', '.join(missing)}")


def _check_scale(spec: OperatorSpec):
    if not spec.s > 0:
        raise DomainError(f"Oscillator scale s must be positive, got {spec.s}")
    if not spec.xi >= 0:
        raise DomainError(f"Coupling xi must be non-negative, got {spec.xi}")
    if int(spec.N) != spec.N or spec.N < 2:
        raise DomainError(f"Truncation order must be an integer >= 2, got {spec.N}")


def _t_block(exponent: float, spec: OperatorSpec, odd_sector: bool) -> np.ndarray:
    """xi c on the full index range, zero when xi = 0."""
    if spec.xi == 0:
        return np.zeros((spec.N, spec.N))
    params = TParams(exponent, spec.u, spec.s, odd_only=odd_sector and exponent <= spec.u - 0.5)
    return spec.xi * t_matrix_closed(params, spec.N).entries


def _floor(spec: OperatorSpec, odd_sector: bool) -> float:
    """Smallest admissible exponent: u - 1/2 (even) or u - 3/2 (odd); u drops out when xi = 0."""
    u = spec.u if spec.xi > 0 else 0.0
    return u - 1.5 if odd_sector else u - 0.5


def _shifts(spec: OperatorSpec, k: np.ndarray) -> np.ndarray:
    odd = spec.shift if spec.shift_odd is None else spec.shift_odd
    return np.where(k % 2 == 0, spec.shift, odd)


def indicial_exponent(kind: OperatorKind, first: float, second: float, root: float) -> float:
    """Exponent sigma = a + c1 (P) or tau = b + d1 (Q) of a root of the indicial equation.

    Raises:
        DomainError: When root does not solve a^2 + (2c1-1)a - c2 = 0 (P) or b^2 + (2d1+1)b - d2 = 0 (Q)
    """
    linear = 2 * first - 1 if kind is OperatorKind.P else 2 * first + 1
    residual = root * root + linear * root - second
    if abs(residual) > ROOT_TOL * max(1.0, root * root, abs(second)):
        raise DomainError(f"{root} is not an indicial root for coefficients ({first}, {second})")
    return root + first


class UAssembler(FormAssembler):
    """u(phi, psi) = <J phi, psi> + xi t(phi, psi) on indices 0..N-1."""

    def exponents(self, spec: OperatorSpec) -> Tuple[float, float]:
        _require(spec, "sigma")
        return spec.sigma, spec.sigma

    def indices(self, spec: OperatorSpec) -> np.ndarray:
        return np.arange(spec.N)

    def _varsigma(self, spec: OperatorSpec) -> np.ndarray:
        sigma, tau = self.exponents(spec)
        k = np.arange(spec.N)
        return np.where(k % 2 == 0, sigma, tau)

    def _full_baseline(self, spec: OperatorSpec) -> np.ndarray:
        k = np.arange(spec.N)
        return (2 * k + 1 + 2 * self._varsigma(spec)) * spec.s + _shifts(spec, k)

    def baseline(self, spec: OperatorSpec) -> np.ndarray:
        return self._full_baseline(spec)[self.indices(spec)]

    def _full_matrix(self, spec: OperatorSpec) -> np.ndarray:
        sigma, _ = self.exponents(spec)
        if not sigma > _floor(spec, odd_sector=False):
            raise DomainError(f"sigma must exceed {_floor(spec, False):g}, got {sigma}")
        return np.diag(self._full_baseline(spec)) + _t_block(sigma, spec, odd_sector=False)

    def assemble(self, spec: OperatorSpec) -> np.ndarray:
        _check_scale(spec)
        k = self.indices(spec)
        matrix = self._full_matrix(spec)[np.ix_(k, k)]
        logger.debug("Assembled %s of order %d", spec.kind.value, k.size)
        return matrix


class PAssembler(UAssembler):
    """Even sector of U_sigma with sigma = a + c1."""

    def exponents(self, spec: OperatorSpec) -> Tuple[float, float]:
        _require(spec, "c1", "a")
        sigma = indicial_exponent(OperatorKind.P, spec.c1, spec.c2, spec.a)
        return sigma, sigma

    def indices(self, spec: OperatorSpec) -> np.ndarray:
        return np.arange(0, spec.N, 2)


class QAssembler(UAssembler):
    """Odd sector of U_tau with tau = b + d1."""

    def exponents(self, spec: OperatorSpec) -> Tuple[float, float]:
        _require(spec, "d1", "b")
        tau = indicial_exponent(OperatorKind.Q, spec.d1, spec.d2, spec.b)
        return tau, tau

    def indices(self, spec: OperatorSpec) -> np.ndarray:
        return np.arange(1, spec.N, 2)

    def _full_matrix(self, spec: OperatorSpec) -> np.ndarray:
        tau, _ = self.exponents(spec)
        if not tau > _floor(spec, odd_sector=True):
            raise DomainError(f"tau must exceed {_floor(spec, True):g}, got {tau}")
        return np.diag(self._full_baseline(spec)) + _t_block(tau, spec, odd_sector=True)


class VAssembler(UAssembler):
    """v = <J_{sigma,tau} phi, psi> + xi t_{sigma,tau} + eta (t'(phi, psi) + t'(psi, phi)).

    Even indices carry the sigma basis, odd indices the tau basis.
    """

    def exponents(self, spec: OperatorSpec) -> Tuple[float, float]:
        _require(spec, "sigma", "tau")
        return spec.sigma, spec.tau

    def theta(self, spec: OperatorSpec) -> float:
        _require(spec, "theta")
        return spec.theta

    def _full_matrix(self, spec: OperatorSpec) -> np.ndarray:
        sigma, tau = self.exponents(spec)
        theta = self.theta(spec)
        report = require_theorem_V(sigma, tau, theta, spec.u)
        logger.debug("Hypotheses hold in case %s", report.case)
        k = np.arange(spec.N)
        even = (k % 2 == 0)[:, None] & (k % 2 == 0)[None, :]
        odd = (k % 2 == 1)[:, None] & (k % 2 == 1)[None, :]
        perturbation = np.where(even, _t_block(sigma, spec, False), 0.0)
        perturbation += np.where(odd, _t_block(tau, spec, True), 0.0)
        if spec.eta != 0:
            cross = cprime_matrix(MixedParams(sigma, tau, theta, spec.s), spec.N).entries
            perturbation += spec.eta * (cross + cross.T)
        return np.diag(self._full_baseline(spec)) + perturbation


class WAssembler(VAssembler):
    """V with sigma = a + c1 and tau = b + d1 on the half line."""

    def exponents(self, spec: OperatorSpec) -> Tuple[float, float]:
        _require(spec, "c1", "d1", "a", "b")
        return (indicial_exponent(OperatorKind.P, spec.c1, spec.c2, spec.a),
                indicial_exponent(OperatorKind.Q, spec.d1, spec.d2, spec.b))

    def theta(self, spec: OperatorSpec) -> float:
        if spec.theta is not None:
            return spec.theta
        _require(spec, "c1", "a", "b")
        return spec.c1 + (spec.a + spec.b) / 2


def get_assembler(kind) -> FormAssembler:
    """Factory function to get the matrix assembler of an operator kind.

    Args:
        kind: OperatorKind or its name ('U', 'V', 'P', 'Q', 'W')

    Returns:
        FormAssembler instance
    """
    kind = OperatorKind(kind) if not isinstance(kind, OperatorKind) else kind
    if kind is OperatorKind.U:
        return UAssembler()
    elif kind is OperatorKind.V:
        return VAssembler()
    elif kind is OperatorKind.P:
        return PAssembler()
    elif kind is OperatorKind.Q:
        return QAssembler()
    elif kind is OperatorKind.W:
        return WAssembler()
    else:
        raise ValueError(f"Unknown operator kind: {kind.value} (Witten models are built with witten_build)")


def assemble_U(spec: OperatorSpec) -> np.ndarray:
    """N x N matrix of u with entries (2k+1+2 sigma) s delta_{kl} + xi c_{kl}.

    Raises:
        DomainError: For sigma <= u - 1/2, xi < 0 or s <= 0
    """
    return get_assembler(OperatorKind.U).assemble(spec)


def assemble_V(spec: OperatorSpec) -> np.ndarray:
    """N x N matrix of v; the hypotheses are checked first.

    Raises:
        HypothesisError: When (sigma, tau, theta, u) fail the two-exponent hypotheses
    """
    return get_assembler(OperatorKind.V).assemble(spec)

