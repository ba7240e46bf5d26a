import json
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from ..coeffs import SCHEMA_VERSION
from ..config import SPECTRA


class OperatorKind(Enum):
    """Operators with a truncated quadratic-form realization"""
    U = "U"
    V = "V"
    P = "P"
    Q = "Q"
    W = "W"
    WITTEN_LEN1 = "WittenLen1"
    WITTEN_LEN2 = "WittenLen2"


@dataclass(frozen=True)
class OperatorSpec:
    """Parameters of one operator and its truncation order.

    U uses (sigma, u, xi, s); V adds (tau, theta, eta). P, Q and W take the
    half-line coefficients (c1, c2), (d1, d2) with the chosen indicial roots
    a, b. Witten kinds take (kappa, u, s, mu, sign). shift is added to every
    eigenvalue; shift_odd, when given, replaces it on odd indices.
    """
    kind: OperatorKind
    N: int = SPECTRA.default_order
    u: float = 0.5
    s: float = 1.0
    xi: float = 0.0
    eta: float = 0.0
    sigma: Optional[float] = None
    tau: Optional[float] = None
    theta: Optional[float] = None
    c1: Optional[float] = None
    c2: float = 0.0
    d1: Optional[float] = None
    d2: float = 0.0
    a: Optional[float] = None
    b: Optional[float] = None
    kappa: Optional[float] = None
    mu: float = 0.0
    sign: str = "+"
    shift: float = 0.0
    shift_odd: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.kind, OperatorKind):
            object.__setattr__(self, "kind", OperatorKind(self.kind))

    def with_order(self, N: int) -> "OperatorSpec":
        data = asdict(self)
        data["N"] = N
        return OperatorSpec(**data)

    def to_json(self) -> dict:
        data = asdict(self)
        data["kind"] = self.kind.value
        return data


@dataclass(frozen=True)
class RitzResult:
    """Rayleigh-Ritz eigenvalues of one truncation.

    Args:
        kind: Operator kind
        N: Truncation order
        eigenvalues: Ascending Ritz values
        indices: Global index k attached to each eigenvalue
        baseline: Unperturbed values (2k+1+2 varsigma_k) s plus shifts, in the same order
        parity_labels: Dominant parity of each eigenvector
        ties: Positions whose parity share is within the tie tolerance of 1/2
        convergence: |lambda_k(N) - lambda_k(N/2)|, NaN where absent
        scale: Oscillator scale s, the floor of the relative change
        rtol: Convergence threshold
    """
    kind: str
    N: int
    eigenvalues: np.ndarray
    indices: np.ndarray
    baseline: np.ndarray
    parity_labels: Tuple[str, ...]
    ties: Tuple[int, ...] = ()
    convergence: Optional[np.ndarray] = None
    scale: float = 1.0
    rtol: float = SPECTRA.convergence_rtol
    eigenvectors: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def relative_change(self) -> np.ndarray:
        if self.convergence is None:
            return np.full(self.eigenvalues.shape, np.nan)
        return self.convergence / np.maximum(np.abs(self.eigenvalues), self.scale)

    @property
    def converged(self) -> np.ndarray:
        with np.errstate(invalid="ignore"):
            return self.relative_change < self.rtol

    @property
    def gaps(self) -> np.ndarray:
        return self.eigenvalues - self.baseline

    def window(self, fraction: float = SPECTRA.window_fraction) -> int:
        """Number of leading eigenvalues inside the reported window k <= fraction N."""
        return min(len(self.eigenvalues), int(fraction * self.N) + 1)

    def group(self, parity: str) -> np.ndarray:
        """Eigenvalues whose eigenvectors are dominated by one parity, ascending."""
        mask = np.array([label == parity for label in self.parity_labels], dtype=bool)
        return self.eigenvalues[mask]

    def to_json(self) -> dict:
        change = self.relative_change
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "N": self.N,
            "eigenvalues": self.eigenvalues.tolist(),
            "indices": [int(k) for k in self.indices],
            "gaps": self.gaps.tolist(),
            "parity_labels": list(self.parity_labels),
            "ties": list(self.ties),
            "relative_change": [None if np.isnan(c) else float(c) for c in change],
            "converged": [bool(c) for c in self.converged],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_csv(self, path: Union[str, Path], header: Optional[dict] = None) -> Path:
        """k, lambda_k, gap, converged flag, with a commented header block."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"schema: {SCHEMA_VERSION}", f"kind: {self.kind}", f"N: {self.N}"]
        lines += [f"{key}: {value}" for key, value in (header or {}).items()]
        lines.append("k,lambda,gap,converged")
        table = np.column_stack([self.indices, self.eigenvalues, self.gaps, self.converged.astype(int)])
        np.savetxt(path, table, delimiter=",", fmt=["%d", "%.17g", "%.17g", "%d"], header="\n".join(lines))
        return path


class FormAssembler(ABC):
    """Abstract base class for truncated form matrices."""

    @abstractmethod
    def indices(self, spec: OperatorSpec) -> np.ndarray:
        """Global basis indices k kept by the truncation."""
        pass

    @abstractmethod
    def assemble(self, spec: OperatorSpec) -> np.ndarray:
        """Symmetric matrix of the form on the kept basis, shifts included."""
        pass

    @abstractmethod
    def baseline(self, spec: OperatorSpec) -> np.ndarray:
        """Unperturbed diagonal (2k+1+2 varsigma_k) s plus shifts on the kept basis."""
        pass
