"""Eigenvalue sandwiches of the perturbed oscillators against fitted constants.

Checks report violations and never abort. The window is k <= N/4.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..analysis import diagonal_form_values, fit_form_bound, fit_lower_constant, fit_tprime_bound
from ..coeffs import MixedParams, TParams
from ..config import FITS, SPECTRA
from ..errors import DomainError
from .assemblers import get_assembler
from .base import OperatorKind, OperatorSpec, RitzResult

logger = logging.getLogger(__name__)

UPPER_RTOL = 1e-9


@dataclass
class SandwichReport:
    """Outcome of one sandwich verification.

    checks maps a check name to True, False or None (vacuous).
    """
    operator: str
    window: int
    unperturbed: bool = False
    checks: Dict[str, Optional[bool]] = field(default_factory=dict)
    constants: Dict[str, float] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)
    groups: Dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(result is not False for result in self.checks.values())

    def record(self, name: str, result: Optional[bool], detail: str = ""):
        self.checks[name] = result
        if result is False:
            self.violations.append(f"{name}: {detail}" if detail else name)

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "ok": self.ok,
            "window": self.window,
            "unperturbed": self.unperturbed,
            "checks": dict(self.checks),
            "constants": dict(self.constants),
            "violations": list(self.violations),
            "groups": dict(self.groups),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _first_failure(k: np.ndarray, failed: np.ndarray) -> str:
    bad = k[failed]
    return f"{bad.size} indices fail, first k={int(bad[0])}" if bad.size else ""


def gap_slope(k: np.ndarray, gaps: np.ndarray, window=SPECTRA.slope_window) -> Optional[float]:
    """Least-squares slope of log(gap) against log(k+1) over window, None with fewer than 3 points."""
    low, high = window
    keep = (k >= low) & (k <= high) & (gaps > 0)
    if np.count_nonzero(keep) < 3:
        return None
    slope, _ = np.polyfit(np.log(k[keep] + 1.0), np.log(gaps[keep]), 1)
    return float(slope)


def settled_count(ritz: RitzResult, size: int, rtol: float = SPECTRA.sandwich_rtol) -> int:
    """Leading values among the first size whose change against the coarse order is below rtol.

    Without a convergence column every value counts.
    """
    if ritz.convergence is None:
        return size
    with np.errstate(invalid="ignore"):
        settled = ritz.relative_change[:size] < rtol
    return size if settled.all() else int(np.argmin(settled))


def sandwich_check(spec: OperatorSpec, ritz: RitzResult, epsilon: float = FITS.epsilon) -> SandwichReport:
    """Verify the U sandwich on the settled values of the window k <= N/4.

    (settled) every window value moved by less than sandwich_rtol against N/2;
    (i) lambda_k > (2k+1+2 sigma) s; (ii-a) diagonal form values above the D-hat bound;
    (ii-b) eigenvalue-level D-hat_lambda > 0; (iii) the upper bound with C-hat at epsilon;
    (iv) the gap-decay slope follows the first-order gaps xi c_{k,k} within slope_tol
    and decays no faster than (k+1)^-u.
    """
    if spec.kind is not OperatorKind.U:
        raise DomainError(f"sandwich_check needs a U spec, got {spec.kind.value}")
    window = ritz.window()
    size = settled_count(ritz, window)
    report = SandwichReport(operator="U", window=size)
    if ritz.convergence is not None:
        report.record("settled", size == window, f"{size} of {window} values within {SPECTRA.sandwich_rtol:g}")
    report.constants["converged"] = int(np.sum(ritz.converged[:window]))
    report.constants["settled"] = size
    if size == 0:
        return report
    k = np.arange(size)
    lam = ritz.eigenvalues[:size] - spec.shift
    base = (2 * k + 1 + 2 * spec.sigma) * spec.s
    gaps = lam - base

    if spec.xi == 0:
        report.unperturbed = True
        report.record("i", None)
        report.record("ii-a", None)
        report.record("ii-b", None)
        exact = np.abs(gaps) <= UPPER_RTOL * np.maximum(base, 1.0)
        report.record("iii", bool(np.all(exact)), _first_failure(k, ~exact))
        report.record("iv", None)
        report.constants.update({"D": 0.0, "D_lambda": 0.0})
        return report

    params = TParams(spec.sigma, spec.u, spec.s)
    su = spec.s ** spec.u

    above = gaps > 0
    report.record("i", bool(np.all(above)), _first_failure(k, ~above))

    lower = fit_lower_constant(params, K=size - 1)
    first_order = spec.xi * diagonal_form_values(params, size - 1)
    diag_values = base + first_order
    diag_bound = base + spec.xi * lower.fitted_value * su * (k + 1.0) ** (-spec.u)
    holds = diag_values >= diag_bound * (1 - UPPER_RTOL)
    report.record("ii-a", bool(np.all(holds)), _first_failure(k, ~holds))

    d_lambda = float(np.min(gaps * (k + 1.0) ** spec.u / (spec.xi * su)))
    report.record("ii-b", d_lambda > 0, f"D_lambda = {d_lambda:.6g}")

    upper_fit = fit_form_bound(params, epsilon=epsilon, N=ritz.N)
    upper = (2 * k + 1 + 2 * spec.sigma) * (spec.s + spec.xi * epsilon * su) + spec.xi * upper_fit.fitted_value * su
    below = lam <= upper * (1 + UPPER_RTOL)
    report.record("iii", bool(np.all(below)), _first_failure(k, ~below))

    slope = gap_slope(k, gaps)
    first_order_slope = gap_slope(k, first_order)
    if slope is None or first_order_slope is None:
        report.record("iv", None)
    else:
        follows = abs(slope - first_order_slope) <= SPECTRA.slope_tol
        bounded = slope >= -spec.u - SPECTRA.slope_tol
        report.record("iv", follows and bounded,
                      f"slope {slope:.4f} against first order {first_order_slope:.4f}, floor {-spec.u}")

    report.constants.update({
        "D": lower.fitted_value,
        "D_lambda": d_lambda,
        "D_ratio": d_lambda / lower.fitted_value,
        "C": upper_fit.fitted_value,
        "epsilon": epsilon,
        "slope": slope,
        "first_order_slope": first_order_slope,
    })
    logger.info("U sandwich over %d values: %s", size, "ok" if report.ok else "; ".join(report.violations))
    return report


def sandwich_check_V(spec: OperatorSpec, ritz: RitzResult, epsilon: float = FITS.epsilon) -> SandwichReport:
    """Verify the two-exponent sandwich separately on the even and odd parity groups.

    Group members are taken by eigenvector dominant parity; the j-th member of a group
    carries k = 2j (even) or k = 2j+1 (odd) and varsigma_k = sigma or tau.
    """
    if spec.kind not in (OperatorKind.V, OperatorKind.W):
        raise DomainError(f"sandwich_check_V needs a V or W spec, got {spec.kind.value}")
    assembler = get_assembler(spec.kind)
    sigma, tau = assembler.exponents(spec)
    theta = assembler.theta(spec)
    last = ritz.window() - 1
    report = SandwichReport(operator=spec.kind.value, window=last + 1)
    report.unperturbed = spec.xi == 0 and spec.eta == 0

    even_params = TParams(sigma, spec.u, spec.s) if spec.xi > 0 else None
    odd_params = TParams(tau, spec.u, spec.s, odd_only=tau <= spec.u - 0.5) if spec.xi > 0 else None
    c_hat = 0.0
    if spec.xi > 0:
        c_hat = max(fit_form_bound(even_params, epsilon=epsilon, N=ritz.N).fitted_value,
                    fit_form_bound(odd_params, epsilon=epsilon, N=ritz.N).fitted_value)
    mixed = MixedParams(sigma, tau, theta, spec.s)
    e_hat = 0.0
    if spec.eta != 0:
        e_hat = fit_tprime_bound(mixed, spec.u, epsilon=epsilon, N=ritz.N).fitted_value
    su = spec.s ** spec.u
    sv = spec.s ** ((mixed.v + 1) / 2)
    slope_factor = spec.s + epsilon * (spec.xi * su + 2 * abs(spec.eta) * sv)
    offset = spec.xi * c_hat * su + 2 * abs(spec.eta) * e_hat * sv
    report.constants.update({"C": c_hat, "E": e_hat, "epsilon": epsilon, "v": mixed.v})
    report.constants["ties"] = len([j for j in ritz.ties if j <= last])

    shift_odd = spec.shift if spec.shift_odd is None else spec.shift_odd
    for parity, offset_k, varsigma, shift, params in (("even", 0, sigma, spec.shift, even_params),
                                                        ("odd", 1, tau, shift_odd, odd_params)):
        values = ritz.group(parity) - shift
        k = 2 * np.arange(values.size) + offset_k
        inside = k <= last
        k, values = k[inside], values[inside]
        base = (2 * k + 1 + 2 * varsigma) * spec.s
        gaps = values - base
        upper = (2 * k + 1 + 2 * varsigma) * slope_factor + offset
        summary = {"count": int(k.size), "varsigma": varsigma}

        if report.unperturbed:
            report.record(f"{parity}/i", None)
            report.record(f"{parity}/ii-b", None)
        else:
            above = gaps > 0
            report.record(f"{parity}/i", bool(np.all(above)), _first_failure(k, ~above))
            if spec.xi > 0 and k.size:
                d_lambda = float(np.min(gaps * (k + 1.0) ** spec.u / (spec.xi * su)))
                lower = fit_lower_constant(params, K=max(int(k[-1]), 1))
                summary.update({"D": lower.fitted_value, "D_lambda": d_lambda,
                                "D_ratio": d_lambda / lower.fitted_value})
                report.record(f"{parity}/ii-b", d_lambda > 0, f"D_lambda = {d_lambda:.6g}")
            else:
                report.record(f"{parity}/ii-b", None)
        below = values <= upper * (1 + UPPER_RTOL)
        report.record(f"{parity}/iii", bool(np.all(below)), _first_failure(k, ~below))
        report.groups[parity] = summary

    logger.info("%s sandwich over %d values: %s", spec.kind.value, last + 1,
                "ok" if report.ok else "; ".join(report.violations))
    return report
