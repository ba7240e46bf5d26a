"""Witten Laplacian components of a cone stratum as half-line operators.

With kappa = (n-2r-1)u/2 and sign '+' taking the upper sign of the constant:

    length one   delta_r   = H - 2 kappa x^-1 d/dx         -/+ s(1+2 kappa)       (P, c1 = kappa)
                 delta_r+1 = H - 2 kappa (d/dx) x^-1       -/+ s(-1+2 kappa)      (Q, d1 = kappa)
    length two   delta_r-1 = P with c1 = kappa+u, xi = mu^2, -/+ s(1+2(kappa+u))
                 delta_r+1 = Q with d1 = kappa,   xi = mu^2, -/+ s(-1+2 kappa)
                 delta_r   = W with c1 = kappa, d1 = kappa+u, xi = mu^2, eta = -2 mu u,
                             shifts -/+ s(1+2 kappa) even and -/+ s(-1+2(kappa+u)) odd

Every choice of indicial roots is a row of the extension tables; all rows are
built and flagged, none is ranked.
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..analysis import theorem_V_hypotheses
from ..errors import DomainError, HypothesisError
from .base import OperatorKind, OperatorSpec, RitzResult
from .halfline import halfline_reduce
from .solver import ritz_spectrum

logger = logging.getLogger(__name__)

LOWER = "delta_r-1"
MIDDLE = "delta_r"
UPPER = "delta_r+1"
ZERO_TOL = 1e-8
PAIRING_FLOOR = 1e-6
TRUNCATION_FACTOR = 1 / (2 ** 0.25 - 1)


@dataclass(frozen=True)
class WittenRow:
    """One self-adjoint extension: a row of the extension tables."""
    component: str
    row: int
    a: Optional[float]
    b: Optional[float]
    sigma: Optional[float]
    tau: Optional[float]
    theta: Optional[float]
    condition: str
    table_condition: bool
    hypotheses_ok: bool
    spec: OperatorSpec

    @property
    def label(self) -> str:
        return f"{self.component}/row{self.row}"

    @property
    def admissible(self) -> bool:
        return self.hypotheses_ok

    @property
    def shift(self) -> float:
        return self.spec.shift

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "a": self.a, "b": self.b,
            "sigma": self.sigma, "tau": self.tau, "theta": self.theta,
            "condition": self.condition,
            "table_condition": self.table_condition,
            "hypotheses_ok": self.hypotheses_ok,
            "spec": self.spec.to_json(),
        }


@dataclass(frozen=True)
class WittenModel:
    kappa: float
    u: float
    s: float
    mu: float
    sign: str
    length: int
    rows: Tuple[WittenRow, ...]

    @property
    def components(self) -> List[Tuple[str, OperatorSpec, float]]:
        """(name, spec, constant shift) of every admissible row."""
        return [(row.label, row.spec, row.shift) for row in self.rows if row.admissible]

    @property
    def admissibility(self) -> Dict[str, bool]:
        return {row.label: row.admissible for row in self.rows}

    def row(self, label: str) -> WittenRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise DomainError(f"No row {label} in the length-{self.length} model")

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa, "u": self.u, "s": self.s, "mu": self.mu,
            "sign": self.sign, "length": self.length,
            "rows": [row.to_json() for row in self.rows],
            "admissibility": self.admissibility,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _sign_factor(sign: str) -> float:
    if sign == "+":
        return -1.0
    if sign == "-":
        return 1.0
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


def _is(value: float, target: float) -> bool:
    return math.isclose(value, target, rel_tol=0.0, abs_tol=1e-12)


# (a, sigma, table condition text, table condition) per row, as functions of (kappa, u)
_TABLE1_LOWER: List[Tuple[Callable, Callable, str, Callable]] = [
    (lambda k, u: 0.0, lambda k, u: k + u, "kappa > -1/2", lambda k, u: k > -0.5),
    (lambda k, u: 1 - 2 * (k + u), lambda k, u: 1 - k - u, "kappa < 3/2-2u", lambda k, u: k < 1.5 - 2 * u),
]
_TABLE1_UPPER = [
    (lambda k, u: 0.0, lambda k, u: k, "kappa > u-3/2", lambda k, u: k > u - 1.5),
    (lambda k, u: -1 - 2 * k, lambda k, u: -1 - k, "kappa < 1/2-u", lambda k, u: k < 0.5 - u),
]
# (a, b, sigma, tau, theta, table condition text, table condition)
_TABLE2 = [
    (lambda k, u: 0.0, lambda k, u: 0.0, lambda k, u: k, lambda k, u: k + u, lambda k, u: k,
     "kappa > u-1/2", lambda k, u: k > u - 0.5),
    (lambda k, u: 1 - 2 * k, lambda k, u: -1 - 2 * (k + u), lambda k, u: 1 - k, lambda k, u: -1 - k - u,
     lambda k, u: -k - u, "kappa < 1/2-2u", lambda k, u: k < 0.5 - 2 * u),
    (lambda k, u: 0.0, lambda k, u: -1 - 2 * (k + u), lambda k, u: k, lambda k, u: -1 - k - u,
     lambda k, u: -0.5 - u, "impossible", lambda k, u: False),
    (lambda k, u: 1 - 2 * k, lambda k, u: 0.0, lambda k, u: 1 - k, lambda k, u: k + u, lambda k, u: 0.5,
     "-(1+u)/2 < kappa < (1-u)/2 or kappa in {-1/2-u, 1/2}",
     lambda k, u: -(1 + u) / 2 < k < (1 - u) / 2 or _is(k, -0.5 - u) or _is(k, 0.5)),
]


def _halfline_rows(component: str, kind: OperatorKind, first: float, xi: float, u: float, s: float,
                   shift: float, table, kappa: float) -> List[WittenRow]:
    """Rows of a P or Q component; u = 0 in the admissibility floor when xi = 0."""
    roots = halfline_reduce(kind, (first, 0.0), u if xi > 0 else 0.0)
    rows = []
    for number, (root_of, exponent_of, text, condition) in enumerate(table, start=1):
        root = root_of(kappa, u)
        reduced = min(roots, key=lambda r: abs(r.root - root))
        if abs(reduced.root - root) > 1e-9 * max(1.0, abs(root)):
            raise DomainError(f"{component}: {root} is not an indicial root")
        if kind is OperatorKind.P:
            spec = OperatorSpec(OperatorKind.P, u=u, s=s, xi=xi, c1=first, a=root, shift=shift)
            a, b, sigma, tau = root, None, exponent_of(kappa, u), None
        else:
            spec = OperatorSpec(OperatorKind.Q, u=u, s=s, xi=xi, d1=first, b=root, shift=shift)
            a, b, sigma, tau = None, root, None, exponent_of(kappa, u)
        rows.append(WittenRow(component, number, a, b, sigma, tau, None, text,
                              bool(condition(kappa, u)), reduced.admissible, spec))
    return rows


def _length_one_tables():
    lower = [
        (lambda k, u: 0.0, lambda k, u: k, "kappa > -1/2", lambda k, u: k > -0.5),
        (lambda k, u: 1 - 2 * k, lambda k, u: 1 - k, "kappa < 3/2", lambda k, u: k < 1.5),
    ]
    upper = [
        (lambda k, u: 0.0, lambda k, u: k, "kappa > -3/2", lambda k, u: k > -1.5),
        (lambda k, u: -1 - 2 * k, lambda k, u: -1 - k, "kappa < 1/2", lambda k, u: k < 0.5),
    ]
    return lower, upper


def witten_build(kappa: float, u: float, s: float = 1.0, mu: float = 1.0, sign: str = "+",
                 length: int = 2) -> WittenModel:
    """Build every extension row of the length-one or length-two model.

    Raises:
        DomainError: For u outside (0, 1), s <= 0, mu <= 0 at length two, or a bad sign
        HypothesisError: When no row is admissible
    """
    if not 0 < u < 1:
        raise DomainError(f"Perturbation exponent u must lie in (0, 1), got {u}")
    if not s > 0:
        raise DomainError(f"Oscillator scale s must be positive, got {s}")
    factor = _sign_factor(sign)

    if length == 1:
        lower, upper = _length_one_tables()
        rows = _halfline_rows(MIDDLE, OperatorKind.P, kappa, 0.0, u, s, factor * s * (1 + 2 * kappa), lower, kappa)
        rows += _halfline_rows(UPPER, OperatorKind.Q, kappa, 0.0, u, s, factor * s * (-1 + 2 * kappa), upper, kappa)
    elif length == 2:
        if not mu > 0:
            raise DomainError(f"Length-two models need mu > 0, got {mu}")
        xi = mu * mu
        rows = _halfline_rows(LOWER, OperatorKind.P, kappa + u, xi, u, s,
                              factor * s * (1 + 2 * (kappa + u)), _TABLE1_LOWER, kappa)
        for number, (a_of, b_of, sigma_of, tau_of, theta_of, text, condition) in enumerate(_TABLE2, start=1):
            a, b = a_of(kappa, u), b_of(kappa, u)
            sigma, tau, theta = sigma_of(kappa, u), tau_of(kappa, u), theta_of(kappa, u)
            spec = OperatorSpec(OperatorKind.W, u=u, s=s, xi=xi, eta=-2 * mu * u, c1=kappa, d1=kappa + u,
                                a=a, b=b, theta=theta,
                                shift=factor * s * (1 + 2 * kappa),
                                shift_odd=factor * s * (-1 + 2 * (kappa + u)))
            hypotheses = theorem_V_hypotheses(sigma, tau, theta, u)
            rows.append(WittenRow(MIDDLE, number, a, b, sigma, tau, theta, text,
                                  bool(condition(kappa, u)), hypotheses.ok, spec))
        rows += _halfline_rows(UPPER, OperatorKind.Q, kappa, xi, u, s,
                               factor * s * (-1 + 2 * kappa), _TABLE1_UPPER, kappa)
    else:
        raise DomainError(f"Witten models have length 1 or 2, got {length}")

    rows = tuple(rows)
    model = WittenModel(kappa, u, s, mu, sign, length, rows)
    if not any(row.admissible for row in rows):
        raise HypothesisError(f"No admissible extension for kappa={kappa}, u={u}",
                              violated=[row.label for row in rows])
    for row in rows:
        if row.table_condition != row.hypotheses_ok:
            logger.info("%s: table condition %r gives %s, hypotheses give %s",
                           row.label, row.condition, row.table_condition, row.hypotheses_ok)
    return model


def witten_spectrum(model: WittenModel, N: int) -> Dict[str, RitzResult]:
    """Ritz values of every admissible component at order N, constant shifts included."""
    spectra = {}
    for label, spec, shift in model.components:
        spectra[label] = ritz_spectrum(spec.with_order(N), [N])[0]
        logger.info("%s: lowest %.10g (shift %g)", label, spectra[label].eigenvalues[0], shift)
    return spectra


def _change_at(result: RitzResult, position: int) -> float:
    if result.convergence is None or position >= len(result.convergence):
        return 0.0
    change = float(result.convergence[position])
    return 0.0 if math.isnan(change) else change


def supersymmetric_pairing(lower: RitzResult, middle: RitzResult, count: int = 3) -> dict:
    """Distance from the lowest nonzero eigenvalues of lower to the spectrum of middle.

    A pair is within truncation when the distance is at most
    PAIRING_FLOOR |lambda| + TRUNCATION_FACTOR (delta_lower + delta_middle), delta the
    change of each value against order N/2 (zero when unknown). TRUNCATION_FACTOR bounds
    the remaining error of a value whose error decays at least like N^-1/4.

    Returns a dict with (lambda, nearest, relative distance) triples, the per-pair
    changes and allowed distances, the worst relative distance and within_truncation.
    """
    positions = np.flatnonzero(np.abs(lower.eigenvalues) > ZERO_TOL * lower.scale)[:count]
    pairs, changes, allowed = [], [], []
    for position in positions:
        value = float(lower.eigenvalues[position])
        nearest_at = int(np.argmin(np.abs(middle.eigenvalues - value)))
        nearest = float(middle.eigenvalues[nearest_at])
        pairs.append((value, nearest, abs(nearest - value) / abs(value)))
        change = (_change_at(lower, int(position)), _change_at(middle, nearest_at))
        changes.append(change)
        allowed.append(PAIRING_FLOOR * abs(value) + TRUNCATION_FACTOR * sum(change))
    worst = max((rel for _, _, rel in pairs), default=math.inf)
    within = bool(pairs) and all(abs(nearest - value) <= bound
                                 for (value, nearest, _), bound in zip(pairs, allowed))
    logger.info("Pairing of %d values: worst relative distance %.3e, within truncation %s",
                len(pairs), worst, within)
    return {"pairs": pairs, "changes": changes, "allowed": allowed,
            "max_relative": worst, "within_truncation": within}
