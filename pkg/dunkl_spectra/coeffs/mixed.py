"""Mixed scalar products of Hermite functions with three exponents.

    c-hat_{k,l} = <phi_{sigma,k}, phi_{tau,l}>_theta
    c'_{k,l}    = t'(phi_{sigma,k}, phi_{tau,l}) = <phi_{sigma,k}, x^{-1} phi_{tau,l}>_theta

with v = sigma + tau - 2 theta. Closed forms are evaluated as signed log-sums
and combined with exact summation in descending magnitude.
"""
import logging
import math
from functools import lru_cache

import numpy as np

from ..basis import BasisParams, xinv_coeffs
from ..config import COEFFS
from ..errors import DegeneracyError, DomainError
from ..oracle import gram_matrix
from ..specfun import log_abs_gamma, log_gamma, signed_log_gamma_ratio
from .matrix import CoeffFamily, CoeffMatrix, Method
from .params import MixedCase, MixedParams

logger = logging.getLogger(__name__)


def _guard_pole(value: float, label: str):
    """Refuse arguments within the degeneracy tolerance of a Gamma pole."""
    nearest = round(value)
    if nearest <= 0 and abs(value - nearest) < COEFFS.degeneracy_tol:
        raise DegeneracyError(f"{label} = {value:g} is an excluded integer difference")


def _log_pochhammer(a: float, q):
    """ln|Gamma(q+a) / (q! Gamma(a))| and its sign, q a nonnegative integer array."""
    q = np.asarray(q, dtype=float)
    log_num, sign_num = log_abs_gamma(q + a)
    log_den, sign_den = log_abs_gamma(a)
    return log_num - log_den - log_gamma(q + 1.0), sign_num * sign_den


def _combine(log_terms, signs, log_prefactor: float = 0.0, sign: float = 1.0) -> float:
    log_terms = np.atleast_1d(np.asarray(log_terms, dtype=float)) + log_prefactor
    values = np.atleast_1d(signs) * np.exp(log_terms)
    order = np.argsort(-np.abs(values))
    return sign * math.fsum(values[order])


def _parity_sign(count: int) -> float:
    return 1.0 if count % 2 == 0 else -1.0


def _require(condition: bool, message: str):
    if not condition:
        raise DomainError(message)


def _chat_sigma_theta(params: MixedParams, m: int, n: int) -> float:
    if m > n:
        return 0.0
    sigma, tau, s = params.sigma, params.tau, params.s
    v = params.v
    _guard_pole(v, "tau - sigma")
    log_pre = 0.5 * v * math.log(s) + 0.5 * (
        log_gamma(n + 1.0) + log_gamma(m + 0.5 + sigma) - log_gamma(m + 1.0) - log_gamma(n + 0.5 + tau)
    )
    log_term, sign = _log_pochhammer(v, n - m)
    return _combine(log_term, sign, log_pre, _parity_sign(m + n))


def _chat_generic(params: MixedParams, m: int, n: int) -> float:
    sigma, tau, theta, s = params.sigma, params.tau, params.theta, params.s
    _guard_pole(sigma - theta, "sigma - theta")
    _guard_pole(tau - theta, "tau - theta")
    p = np.arange(min(m, n) + 1)
    log_sigma, sign_sigma = _log_pochhammer(sigma - theta, m - p)
    log_tau, sign_tau = _log_pochhammer(tau - theta, n - p)
    log_terms = log_gamma(p + 0.5 + theta) - log_gamma(p + 1.0) + log_sigma + log_tau
    log_pre = 0.5 * params.v * math.log(s) + 0.5 * (
        log_gamma(m + 1.0) + log_gamma(n + 1.0) - log_gamma(m + 0.5 + sigma) - log_gamma(n + 0.5 + tau)
    )
    return _combine(log_terms, sign_sigma * sign_tau, log_pre, _parity_sign(m + n))


def chat_coeff(params: MixedParams, k: int, l: int) -> float:
    """c-hat_{k,l} = <phi_{sigma,k}, phi_{tau,l}>_theta by its closed form.

    Even indices need sigma, tau, theta > -1/2 and odd ones > -3/2. Odd pairs
    are evaluated through c-hat_{sigma,tau,theta,k,l} = c-hat_{sigma+1,tau+1,theta+1,k-1,l-1}.

    Raises:
        DomainError: For exponents out of range
        DegeneracyError: When an excluded integer difference hits a Gamma pole
    """
    if (k + l) % 2:
        return 0.0
    floor = -0.5 if k % 2 == 0 else -1.5
    _require(min(params.sigma, params.tau, params.theta) > floor,
             f"c-hat with indices ({k}, {l}) needs exponents > {floor}, got {params}")
    if k % 2:
        return chat_coeff(params.shifted(), k - 1, l - 1)
    m, n = k // 2, l // 2
    case = params.case
    if case is MixedCase.ALL_EQUAL:
        return 1.0 if k == l else 0.0
    if case is MixedCase.SIGMA_EQ_THETA:
        return _chat_sigma_theta(params, m, n)
    if case is MixedCase.TAU_EQ_THETA:
        return chat_coeff(params.swapped(), l, k)
    return _chat_generic(params, m, n)


def _cprime_all_equal(params: MixedParams, m: int, n: int) -> float:
    if m > n:
        return 0.0
    sigma = params.sigma
    log_value = 0.5 * math.log(params.s) + 0.5 * (
        log_gamma(n + 1.0) + log_gamma(m + 0.5 + sigma) - log_gamma(m + 1.0) - log_gamma(n + 1.5 + sigma)
    )
    return _parity_sign(n - m) * math.exp(log_value)


def _cprime_sigma_theta(params: MixedParams, m: int, n: int) -> float:
    if m > n:
        return 0.0
    sigma, tau, v = params.sigma, params.tau, params.v
    _guard_pole(1 + v, "1 + tau - sigma")
    log_pre = 0.5 * (1 + v) * math.log(params.s) + 0.5 * (
        log_gamma(n + 1.0) + log_gamma(m + 0.5 + sigma) - log_gamma(m + 1.0) - log_gamma(n + 1.5 + tau)
    )
    log_term, sign = _log_pochhammer(1 + v, n - m)
    return _combine(log_term, sign, log_pre, _parity_sign(m + n))


def _cprime_tau_theta(params: MixedParams, m: int, n: int) -> float:
    sigma, tau, v = params.sigma, params.tau, params.v
    _guard_pole(v, "sigma - tau")
    j = np.arange(min(m, n) + 1)
    log_poch, sign = _log_pochhammer(v, m - j)
    log_terms = log_gamma(j + 0.5 + tau) - log_gamma(j + 1.0) + log_poch
    log_pre = 0.5 * (1 + v) * math.log(params.s) + 0.5 * (
        log_gamma(m + 1.0) + log_gamma(n + 1.0) - log_gamma(m + 0.5 + sigma) - log_gamma(n + 1.5 + tau)
    )
    return _combine(log_terms, sign, log_pre, _parity_sign(m + n))


def _cprime_theta_tau_plus_1(params: MixedParams, m: int, n: int) -> float:
    if m < n:
        return 0.0
    sigma, tau, v = params.sigma, params.tau, params.v
    _guard_pole(v + 1, "sigma - tau - 1")
    log_pre = 0.5 * (1 + v) * math.log(params.s) + 0.5 * (
        log_gamma(m + 1.0) + log_gamma(n + 1.5 + tau) - log_gamma(n + 1.0) - log_gamma(m + 0.5 + sigma)
    )
    log_term, sign = _log_pochhammer(v + 1, m - n)
    return _combine(log_term, sign, log_pre, _parity_sign(m + n))


def _cprime_generic(params: MixedParams, m: int, n: int) -> float:
    sigma, tau, theta = params.sigma, params.tau, params.theta
    _guard_pole(sigma - theta, "sigma - theta")
    _guard_pole(1 + tau - theta, "1 + tau - theta")
    p = np.arange(min(m, n) + 1)
    log_sigma, sign_sigma = _log_pochhammer(sigma - theta, m - p)
    log_tau, sign_tau = _log_pochhammer(1 + tau - theta, n - p)
    log_terms = log_gamma(p + 0.5 + theta) - log_gamma(p + 1.0) + log_sigma + log_tau
    log_pre = 0.5 * (1 + params.v) * math.log(params.s) + 0.5 * (
        log_gamma(m + 1.0) + log_gamma(n + 1.0) - log_gamma(m + 0.5 + sigma) - log_gamma(n + 1.5 + tau)
    )
    return _combine(log_terms, sign_sigma * sign_tau, log_pre, _parity_sign(m + n))


_CPRIME_FORMS = {
    MixedCase.ALL_EQUAL: _cprime_all_equal,
    MixedCase.SIGMA_EQ_THETA: _cprime_sigma_theta,
    MixedCase.TAU_EQ_THETA: _cprime_tau_theta,
    MixedCase.THETA_EQ_TAU_PLUS_1: _cprime_theta_tau_plus_1,
    MixedCase.GENERIC: _cprime_generic,
}


def _check_cprime_exponents(params: MixedParams):
    _require(params.sigma > -0.5 and params.theta > -0.5 and params.tau > -1.5,
             f"c' needs sigma, theta > -1/2 and tau > -3/2, got {params}")


def cprime_coeff(params: MixedParams, k: int, l: int) -> float:
    """c'_{k,l} = <phi_{sigma,k}, x^{-1} phi_{tau,l}>_theta for k even and l odd.

    Returns 0 whenever k is odd or l is even.

    Raises:
        DomainError: For exponents out of range
        DegeneracyError: When an excluded integer difference hits a Gamma pole
    """
    if k % 2 == 1 or l % 2 == 0:
        return 0.0
    _check_cprime_exponents(params)
    return _CPRIME_FORMS[params.case](params, k // 2, (l - 1) // 2)


def _expansion_chat(params: MixedParams, N: int) -> np.ndarray:
    """c-hat table behind the expansion route, from quadrature where the closed form is excluded."""
    try:
        return chat_matrix(params, N).entries
    except DegeneracyError as e:
        logger.info("Expansion route takes c-hat from quadrature: %s", e)
        return chat_matrix(params, N, method="quadrature").entries


def _expansion_entry(params: MixedParams, chat: np.ndarray, k: int, l: int) -> float:
    if k % 2 == 1 or l % 2 == 0:
        return 0.0
    coeffs = xinv_coeffs(BasisParams(params.tau, params.s), l)
    terms = coeffs * chat[k, 0:2 * coeffs.size:2]
    order = np.argsort(-np.abs(terms))
    return math.fsum(terms[order])


def cprime_by_expansion(params: MixedParams, k: int, l: int) -> float:
    """c'_{2m,2n+1} = sum_j a_j c-hat_{2m,2j}, a_j the x^{-1} expansion coefficients of p_{tau,l}.

    When theta = tau + 1 the c-hat closed form sits on an excluded difference
    (tau - theta = -1) and the c-hat values come from the quadrature oracle.
    """
    if k % 2 == 1 or l % 2 == 0:
        return 0.0
    _check_cprime_exponents(params)
    return _expansion_entry(params, _expansion_chat(params, max(k, l) + 1), k, l)


def telescope_check(t: float, p: int, rtol: float = 1e-11) -> bool:
    """Check Gamma(p+1+t)/p! = t sum_{i<=p} Gamma(i+t)/i! at (t, p)."""
    if t <= 0 and t == math.floor(t):
        raise DomainError(f"telescope_check needs t outside -N, got {t}")
    lhs_log, lhs_sign = signed_log_gamma_ratio([p + 1 + t], [p + 1.0])
    lhs = lhs_sign * math.exp(lhs_log)
    i = np.arange(p + 1, dtype=float)
    log_terms, signs = log_abs_gamma(i + t)
    rhs = t * _combine(log_terms - log_gamma(i + 1.0), signs)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return abs(lhs - rhs) <= rtol * scale


def _table(N: int, fill) -> np.ndarray:
    if int(N) != N or N < 1 or N > COEFFS.max_index:
        raise DomainError(f"Truncation order must lie in [1, {COEFFS.max_index}], got {N}")
    entries = np.zeros((N, N))
    for k in range(N):
        for l in range(N):
            entries[k, l] = fill(k, l)
    return entries


def chat_matrix(params: MixedParams, N: int = COEFFS.default_order, method="closed_form") -> CoeffMatrix:
    """c-hat table by closed form or quadrature."""
    method = Method(method)
    if method is Method.CLOSED_FORM:
        entries = _table(N, lambda k, l: chat_coeff(params, k, l))
    elif method is Method.QUADRATURE:
        entries = gram_matrix(BasisParams(params.sigma, params.s), BasisParams(params.tau, params.s),
                              params.theta, N - 1)
    else:
        raise ValueError(f"Unknown c-hat method: {method.value}")
    logger.debug("c-hat table of order %d, case %s, by %s", N, params.case.value, method.value)
    return CoeffMatrix(family=CoeffFamily.CHAT, params=params, order=N, entries=entries, method=method)


@lru_cache(maxsize=16)
def cprime_matrix(params: MixedParams, N: int = COEFFS.default_order, method="closed_form") -> CoeffMatrix:
    """c' table (nonzero only at k even, l odd) by closed form, expansion or quadrature."""
    method = Method(method)
    if method is Method.CLOSED_FORM:
        entries = _table(N, lambda k, l: cprime_coeff(params, k, l))
    elif method is Method.EXPANSION:
        _check_cprime_exponents(params)
        chat = _expansion_chat(params, N)
        entries = _table(N, lambda k, l: _expansion_entry(params, chat, k, l))
    elif method is Method.QUADRATURE:
        _check_cprime_exponents(params)
        raw = gram_matrix(BasisParams(params.sigma, params.s), BasisParams(params.tau, params.s),
                          params.theta, N - 1, x_power=-1)
        k = np.arange(N)[:, None]
        l = np.arange(N)[None, :]
        entries = np.where((k % 2 == 0) & (l % 2 == 1), raw, 0.0)
    else:
        raise ValueError(f"Unknown c' method: {method.value}")
    logger.debug("c' table of order %d, case %s, by %s", N, params.case.value, method.value)
    return CoeffMatrix(family=CoeffFamily.CPRIME, params=params, order=N, entries=entries, method=method)
