"""Acceptance suite behind the verify-all command.

Each criterion returns (ok, details). Errors raised inside a criterion are
recorded as a failure of that criterion; the suite always runs to the end.
"""
import json
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..analysis import (
    fit_decay_exponent,
    fit_gautschi_constant,
    fit_weierstrass_constant,
    j1_sufficient,
    k1_sufficient,
    region_member,
    s1_sufficient,
    theorem_V_hypotheses,
)
from ..basis import BasisParams
from ..coeffs import (
    MixedParams,
    TParams,
    chat_matrix,
    cprime_matrix,
    sigma_bounds_report,
    t_matrix_closed,
    t_matrix_quadrature,
    t_matrix_recursive,
)
from ..config import FITS
from ..errors import DunklSpectraError
from ..oracle import QuadratureSpec, gaussian_moment, gram_matrix, inner_weighted
from ..spectra import (
    OperatorKind,
    OperatorSpec,
    assemble_halfline_direct,
    eigen_sym,
    ritz_spectrum,
    sandwich_check,
    sandwich_check_V,
    solve,
    supersymmetric_pairing,
    witten_build,
    witten_spectrum,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
PAIRING_TARGET = 1e-6

CHAT_CASES = (
    MixedParams(0.7, 0.7, 0.7),
    MixedParams(0.5, 1.2, 0.5),
    MixedParams(1.3, 0.4, 0.4),
    MixedParams(0.9, 0.6, 0.3),
)

CPRIME_CASES = (
    MixedParams(0.5, 0.5, 0.5),
    MixedParams(0.5, 1.0, 0.5),
    MixedParams(1.2, 0.5, 0.5),
    MixedParams(1.0, -0.4, 0.6),
    MixedParams(0.9, 0.6, 0.3),
)

COEFF_GRID = [(sigma, u) for sigma in (0.3, 1.0, 2.5) for u in (0.25, 0.5, 0.75)]


def json_default(value):
    """Serialise numpy scalars and arrays found in report details."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    details: dict = field(default_factory=dict)
    seconds: Optional[float] = None

    def to_json(self) -> dict:
        data = {"number": self.number, "title": self.title, "ok": self.ok, "details": self.details}
        if self.seconds is not None:
            data["seconds"] = round(self.seconds, 3)
        return data


@dataclass
class VerificationSummary:
    results: List[CriterionResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failed(self) -> List[int]:
        return [r.number for r in self.results if not r.ok]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "ok": self.ok,
            "failed": self.failed,
            "passed": sum(r.ok for r in self.results),
            "criteria": [r.to_json() for r in self.results],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=json_default)


CRITERIA: Dict[int, Tuple[str, Callable[[], Tuple[bool, dict]]]] = {}


def criterion(number: int, title: str):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return register


def _max_abs(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


@criterion(1, "quadrature moment self-test")
def check_moments() -> Tuple[bool, dict]:
    worst = 0.0
    for kappa in (-0.4, -0.25, 0.0, 0.5, 1.0, 2.7):
        for s in (0.5, 1.0, 4.0):
            spec = QuadratureSpec(kappa=kappa, s=s)
            gauss = lambda x, s=s: np.exp(-s * x * x / 2)
            value = inner_weighted(gauss, gauss, spec, parity_f=1, parity_g=1)
            exact = gaussian_moment(kappa, s)
            worst = max(worst, abs(value - exact) / exact)
    return worst <= 1e-11, {"max_relative": worst}


@criterion(2, "basis orthonormality")
def check_orthonormality() -> Tuple[bool, dict]:
    deviations = {}
    for sigma in (-0.4, 0.0, 0.5, 1.0, 2.7):
        params = BasisParams(sigma=sigma, s=1.0)
        gram = gram_matrix(params, params, sigma, 40)
        deviations[str(sigma)] = float(np.abs(gram - np.eye(41)).max())
    return max(deviations.values()) <= 1e-9, {"max_deviation": deviations}


@criterion(3, "three-route coefficient equivalence")
def check_three_routes() -> Tuple[bool, dict]:
    recursion_worst, quadrature_worst = 0.0, 0.0
    for sigma, u in COEFF_GRID:
        params = TParams(sigma, u)
        closed = t_matrix_closed(params, 80).entries
        recursive = t_matrix_recursive(params, 80).entries
        scaled = np.abs(recursive - closed) / np.maximum(1.0, np.abs(closed))
        recursion_worst = max(recursion_worst, float(scaled.max()))
        oracle = t_matrix_quadrature(params, 41).entries
        quadrature_worst = max(quadrature_worst, _max_abs(closed[:41, :41], oracle))
    ok = recursion_worst <= 1e-10 and quadrature_worst <= 1e-8
    return ok, {"recursion_vs_closed": recursion_worst, "closed_vs_quadrature": quadrature_worst}


def _cprime_vanishing(params: MixedParams, entries: np.ndarray) -> bool:
    N = entries.shape[0]
    k, l = np.indices((N, N))
    m, n = k // 2, (l - 1) // 2
    structural = (k % 2 == 1) | (l % 2 == 0)
    ok = bool(np.all(entries[structural] == 0.0))
    if abs(params.sigma - params.theta) <= 1e-12:
        ok &= bool(np.all(entries[~structural & (m > n)] == 0.0))
    if abs(params.theta - params.tau - 1) <= 1e-12:
        ok &= bool(np.all(entries[~structural & (m < n)] == 0.0))
    return ok


@criterion(4, "mixed closed forms against quadrature")
def check_mixed_forms() -> Tuple[bool, dict]:
    details = {}
    ok = True
    for params in CHAT_CASES:
        closed = chat_matrix(params, 21).entries
        error = _max_abs(closed, chat_matrix(params, 21, method="quadrature").entries)
        triangular = True
        if abs(params.sigma - params.theta) <= 1e-12:
            triangular = bool(np.all(np.tril(closed, -1) == 0.0))
        details[f"chat/{params.case.value}"] = {"error": error, "vanishing": triangular}
        ok &= error <= 1e-8 and triangular
    for params in CPRIME_CASES:
        closed = cprime_matrix(params, 22).entries
        error = _max_abs(closed, cprime_matrix(params, 22, method="quadrature").entries)
        vanishing = _cprime_vanishing(params, closed)
        details[f"cprime/{params.case.value}"] = {"error": error, "vanishing": vanishing}
        ok &= error <= 1e-8 and vanishing
    return ok, details


@criterion(5, "scaling laws")
def check_scaling() -> Tuple[bool, dict]:
    worst = 0.0
    for sigma, u in COEFF_GRID:
        params = TParams(sigma, u)
        base = t_matrix_closed(params, 16).entries
        scaled = t_matrix_closed(params.with_scale(4.0), 16).entries
        worst = max(worst, _max_abs(scaled, 4.0 ** u * base) / np.abs(base).max())
    pairs = [(chat_matrix(p.with_scale(4.0), 12).entries, 4.0 ** (p.v / 2) * chat_matrix(p, 12).entries)
             for p in CHAT_CASES]
    pairs += [(cprime_matrix(p.with_scale(4.0), 12).entries, 4.0 ** ((1 + p.v) / 2) * cprime_matrix(p, 12).entries)
              for p in CPRIME_CASES]
    for new, old in pairs:
        nonzero = old != 0.0
        if np.any(new[~nonzero] != 0.0):
            worst = np.inf
        elif nonzero.any():
            worst = max(worst, float(np.max(np.abs(new[nonzero] / old[nonzero] - 1.0))))
    return worst <= 1e-12, {"max_relative": worst}


@criterion(6, "Sigma table properties")
def check_sigma_table() -> Tuple[bool, dict]:
    details = {}
    ok = True
    for sigma, u in COEFF_GRID:
        report = sigma_bounds_report(sigma, u, 128)
        passed = (report["positive"] and report["strict_increase"] and report["even_upper_bound"]
                  and report["odd_sandwich"] and report["alternative_row0_max_rel"] <= 1e-13)
        details[f"sigma={sigma},u={u}"] = report
        ok &= bool(passed)
    return ok, details


@criterion(7, "product bounds")
def check_product_bounds() -> Tuple[bool, dict]:
    details = {}
    ok = True
    for t in (0.25, 0.5, 0.75):
        report = fit_weierstrass_constant(t)
        details[f"C0({t})"] = report.to_json()
        ok &= 0 < report.details["lower"] <= report.fitted_value < 1.0
    for t in (0.3, 1.0, 1.7, 2.0, 3.2):
        report = fit_gautschi_constant(t)
        details[f"C1({t})"] = report.to_json()
        ok &= 0 < report.details["lower"] <= report.fitted_value < 2.0
    return bool(ok), details


@criterion(8, "coefficient decay")
def check_decay() -> Tuple[bool, dict]:
    details = {}
    ok = True
    for sigma, u in ((1.0, 0.5), (0.3, 0.25), (2.5, 0.75)):
        report = fit_decay_exponent(t_matrix_closed(TParams(sigma, u), 128, normalized=True))
        details[f"d/sigma={sigma},u={u}"] = report.fitted_value
        ok &= report.fitted_value > 0
    u = 0.5
    tested = 0
    for params in CPRIME_CASES:
        if not theorem_V_hypotheses(params.sigma, params.tau, params.theta, u).ok:
            continue
        tested += 1
        report = fit_decay_exponent(cprime_matrix(params, 64))
        details[f"cprime/{params.case.value}"] = report.fitted_value
        ok &= report.fitted_value > 0
    details["cprime_cases_tested"] = tested
    return bool(ok and tested > 0), details


@criterion(9, "U eigenvalue sandwich")
def check_u_sandwich() -> Tuple[bool, dict]:
    spec = OperatorSpec(OperatorKind.U, sigma=1.0, u=0.5, xi=1.0, s=1.0, N=256)
    _, result = ritz_spectrum(spec, [128, 256])
    report = sandwich_check(spec, result, epsilon=FITS.epsilon)
    return report.ok and report.checks.get("iv") is True, report.to_json()


@criterion(10, "V two-group structure")
def check_v_groups() -> Tuple[bool, dict]:
    plain = OperatorSpec(OperatorKind.V, sigma=0.5, tau=0.5, theta=0.5, u=0.5, xi=1.0, N=64)
    merged = solve(OperatorSpec(OperatorKind.U, sigma=0.5, u=0.5, xi=1.0, N=64))
    decoupled = solve(plain)
    merge_error = float(np.max(np.abs(decoupled.eigenvalues - merged.eigenvalues) / merged.eigenvalues))
    coupled = OperatorSpec(OperatorKind.V, sigma=0.5, tau=0.5, theta=0.5, u=0.5, xi=1.0, eta=0.3, N=128)
    report = sandwich_check_V(coupled, solve(coupled))
    return merge_error <= 1e-12 and report.ok, {"merge_error": merge_error, "sandwich": report.to_json()}


@criterion(11, "half-line consistency")
def check_halfline() -> Tuple[bool, dict]:
    N = 48
    even_full = solve(OperatorSpec(OperatorKind.U, sigma=1.0, u=0.5, xi=1.0, N=N)).group("even")
    odd_full = solve(OperatorSpec(OperatorKind.U, sigma=1.5, u=0.5, xi=1.0, N=N)).group("odd")
    # nonzero roots: sigma = 1/2 + 1/2 for P, tau = 1/2 + 1 for Q
    p_spec = OperatorSpec(OperatorKind.P, c1=0.5, c2=0.25, a=0.5, u=0.5, xi=1.0, N=N)
    q_spec = OperatorSpec(OperatorKind.Q, d1=1.0, d2=1.75, b=0.5, u=0.5, xi=1.0, N=N)
    details = {}
    for name, spec, full in (("P_vs_even", p_spec, even_full), ("Q_vs_odd", q_spec, odd_full)):
        direct = eigen_sym(assemble_halfline_direct(spec))[0]
        reduced = solve(spec).eigenvalues
        details[name] = {
            "direct": float(np.max(np.abs(direct - full) / np.abs(full))),
            "reduced": float(np.max(np.abs(reduced - full) / np.abs(full))),
        }
    ok = all(error <= 1e-10 for errors in details.values() for error in errors.values())
    return ok, details



@criterion(12, "Witten models")
def check_witten() -> Tuple[bool, dict]:
    model = witten_build(1.0, 0.5, mu=1.0)
    row1 = model.row("delta_r/row1").admissible
    row3 = model.row("delta_r/row3").admissible
    details = {"row1_admissible": row1, "row3_admissible": row3}
    ok = row1 and not row3
    for s in (1.0, 2.0):
        spectra = witten_spectrum(witten_build(1.0, 0.5, s=s, mu=0.0, length=1), 32)
        values = spectra["delta_r/row1"].eigenvalues
        spacing = float(np.max(np.abs(np.diff(values) - 4 * s)) / (4 * s))
        details[f"length_one/s={s}"] = {"lowest": float(values[0]), "spacing_error": spacing}
        ok &= abs(values[0]) <= 1e-8 * s and spacing <= 1e-12
    spectra = witten_spectrum(model, 256)
    pairing = supersymmetric_pairing(spectra["delta_r-1/row1"], spectra["delta_r/row1"], count=3)
    details["pairing"] = pairing
    details["pairing_target"] = PAIRING_TARGET
    ok &= pairing["within_truncation"]
    return bool(ok), details


@criterion(13, "region predicates")
def check_regions() -> Tuple[bool, dict]:
    inside, misses = 0, 0
    for sigma in np.linspace(-0.5, 3.0, 50):
        for tau in np.linspace(-1.5, 2.0, 50):
            if j1_sufficient(sigma, tau):
                inside += 1
                misses += not region_member("J1", (sigma, tau))
    taus = np.linspace(-3.0, 4.0, 2001)
    leaks = [s for s in (-1.0, -0.5, -0.17, 2.5, 2.7, 4.0) if any(j1_sufficient(s, t) for t in taus)]

    rng = np.random.default_rng(FITS.seed)
    implication_failures = 0
    for _ in range(200):
        sigma, tau, theta = rng.uniform(-1.0, 3.0, size=3)
        if k1_sufficient(sigma, tau, theta):
            implication_failures += not (region_member("K1", (sigma, tau, theta))
                                         and region_member("K1p", (sigma, tau, theta)))
        point = rng.uniform(-3.0, 1.0, size=4)
        if s1_sufficient(*point):
            implication_failures += not region_member("S1", tuple(point))
    ok = inside > 0 and misses == 0 and not leaks and implication_failures == 0
    return ok, {"grid_points_inside": inside, "grid_misses": misses, "leaking_sigmas": leaks,
                "implication_failures": implication_failures}


def verify_all(only: Optional[Sequence[int]] = None, debug: bool = False) -> VerificationSummary:
    """Run the acceptance criteria in order.

    Args:
        only: Criterion numbers to run (all when None)
        debug: Attach per-criterion timings
    """
    summary = VerificationSummary()
    for number in sorted(CRITERIA):
        if only and number not in only:
            continue
        title, fn = CRITERIA[number]
        logger.info("Criterion %d: %s", number, title)
        start = time.perf_counter()
        try:
            ok, details = fn()
        except (DunklSpectraError, ArithmeticError) as e:
            logger.error("Criterion %d raised %s: %s", number, type(e).__name__, e)
            ok, details = False, {"error": f"{type(e).__name__}: {e}"}
        elapsed = time.perf_counter() - start
        summary.results.append(CriterionResult(number, title, bool(ok), details, elapsed if debug else None))
        if not ok:
            logger.warning("Criterion %d (%s) failed", number, title)
    return summary
