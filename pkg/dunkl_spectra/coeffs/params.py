from dataclasses import dataclass
from enum import Enum

from ..basis import BasisParams
from ..errors import DomainError

CASE_TOL = 1e-12


@dataclass(frozen=True)
class TParams:
    """Parameters (sigma, u, s) of the form t(phi, psi) = <phi, psi>_{sigma-u}.

    odd_only admits sigma > u - 3/2 for bases used on odd indices only.
    """
    sigma: float
    u: float
    s: float = 1.0
    odd_only: bool = False

    def __post_init__(self):
        if not 0 < self.u < 1:
            raise DomainError(f"Perturbation exponent u must lie in (0, 1), got {self.u}")
        if not self.s > 0:
            raise DomainError(f"Oscillator scale s must be positive, got {self.s}")
        floor = self.u - 1.5 if self.odd_only else self.u - 0.5
        if not self.sigma > floor:
            raise DomainError(f"sigma must exceed {floor:g} (u={self.u}), got {self.sigma}")

    @property
    def basis(self) -> BasisParams:
        return BasisParams(self.sigma, self.s)

    def shifted(self) -> "TParams":
        """Parameters whose even sector carries the odd sector of these"""
        return TParams(self.sigma + 1.0, self.u, self.s)

    def with_scale(self, s: float) -> "TParams":
        return TParams(self.sigma, self.u, s, self.odd_only)


class MixedCase(Enum):
    """Which closed form applies to the mixed products"""
    ALL_EQUAL = "all_equal"
    SIGMA_EQ_THETA = "sigma_eq_theta"
    TAU_EQ_THETA = "tau_eq_theta"
    THETA_EQ_TAU_PLUS_1 = "theta_eq_tau_plus_1"
    GENERIC = "generic"


@dataclass(frozen=True)
class MixedParams:
    """Exponents (sigma, tau, theta) and scale s of the mixed products c-hat and c'."""
    sigma: float
    tau: float
    theta: float
    s: float = 1.0

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"Oscillator scale s must be positive, got {self.s}")

    @property
    def v(self) -> float:
        return self.sigma + self.tau - 2 * self.theta

    @property
    def case(self) -> MixedCase:
        sigma_theta = abs(self.sigma - self.theta) <= CASE_TOL
        tau_theta = abs(self.tau - self.theta) <= CASE_TOL
        if sigma_theta and tau_theta:
            return MixedCase.ALL_EQUAL
        if sigma_theta:
            return MixedCase.SIGMA_EQ_THETA
        if tau_theta:
            return MixedCase.TAU_EQ_THETA
        if abs(self.theta - self.tau - 1) <= CASE_TOL:
            return MixedCase.THETA_EQ_TAU_PLUS_1
        return MixedCase.GENERIC

    def swapped(self) -> "MixedParams":
        return MixedParams(self.tau, self.sigma, self.theta, self.s)

    def shifted(self, delta: float = 1.0) -> "MixedParams":
        return MixedParams(self.sigma + delta, self.tau + delta, self.theta + delta, self.s)

    def with_scale(self, s: float) -> "MixedParams":
        return MixedParams(self.sigma, self.tau, self.theta, s)
