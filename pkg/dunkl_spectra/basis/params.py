from dataclasses import dataclass

from ..errors import DomainError

MAX_INDEX = 10_000


@dataclass(frozen=True)
class BasisParams:
    """Parameters (sigma, s) of a generalized Hermite basis on the line.

    sigma > -1/2 gives the full basis. For -3/2 < sigma <= -1/2 only the odd
    sector exists, realized as phi_{sigma,k} = x phi_{sigma+1,k-1}.
    """
    sigma: float
    s: float = 1.0

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"Oscillator scale s must be positive, got {self.s}")
        if not self.sigma > -1.5:
            raise DomainError(f"Basis exponent must exceed -3/2, got {self.sigma}")

    @property
    def full_basis(self) -> bool:
        return self.sigma > -0.5

    def shifted(self, delta: float = 1.0) -> "BasisParams":
        return BasisParams(self.sigma + delta, self.s)

    def check_index(self, k: int) -> int:
        """Validate an index against the sector this basis supports"""
        if int(k) != k or k < 0:
            raise DomainError(f"Basis index must be a nonnegative integer, got {k!r}")
        k = int(k)
        if k > MAX_INDEX:
            raise DomainError(f"Basis index {k} exceeds the cap {MAX_INDEX}")
        if not self.full_basis and k % 2 == 0:
            raise DomainError(
                f"sigma={self.sigma} <= -1/2 only admits odd indices, got k={k}"
            )
        return k
