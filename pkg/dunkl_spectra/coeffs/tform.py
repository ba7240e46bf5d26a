"""Matrix elements c_{k,l} = t(phi_k, phi_l) = <phi_k, phi_l>_{sigma-u} of the form t.

Three independent routes are provided: the recursion lemmas seeded at
d_{0,0} = 1, the closed form d_{k,l} = (-1)^{m+n} Pi_{k,l} Sigma_{k,l}, and the
quadrature oracle. All of them give c = c_{0,0} d.
"""
import logging
import math
from functools import lru_cache

import numpy as np

from ..config import COEFFS
from ..errors import DomainError
from ..oracle import gram_matrix
from ..specfun import log_gamma
from .matrix import CoeffFamily, CoeffMatrix, Method
from .params import TParams

logger = logging.getLogger(__name__)


def c00(params: TParams) -> float:
    """c_{0,0} = Gamma(sigma-u+1/2) Gamma(sigma+1/2)^{-1} s^u."""
    sigma, u = params.sigma, params.u
    if not sigma > u - 0.5:
        raise DomainError(f"c00 needs sigma > u - 1/2, got sigma={sigma}, u={u}")
    return math.exp(log_gamma(sigma - u + 0.5) - log_gamma(sigma + 0.5) + u * math.log(params.s))


def _split(k: int, l: int):
    if k < 0 or l < 0 or int(k) != k or int(l) != l:
        raise DomainError(f"Indices must be nonnegative integers, got ({k}, {l})")
    if (k + l) % 2:
        raise DomainError(f"Pi and Sigma are only defined for k + l even, got ({k}, {l})")
    return int(k) // 2, int(l) // 2


def pi_factor(sigma: float, k: int, l: int) -> float:
    """Pi_{k,l} for k >= l of equal parity.

    Even pair: (m! Gamma(n+1/2+sigma) / (n! Gamma(m+1/2+sigma)))^{1/2}
    Odd pair:  the same with 3/2 in place of 1/2.
    """
    m, n = _split(k, l)
    if k < l:
        raise DomainError(f"Pi_{{k,l}} needs k >= l, got ({k}, {l})")
    h = 0.5 if k % 2 == 0 else 1.5
    log_sq = log_gamma(m + 1.0) + log_gamma(n + h + sigma) - log_gamma(n + 1.0) - log_gamma(m + h + sigma)
    return math.exp(0.5 * log_sq)


class _Weights:
    """Gamma-ratio weights shared by the Sigma and d recursions.

    even(n)[j] = (n-1)! Gamma(j+1/2+sigma) / (j! Gamma(n+1/2+sigma)),  j < n
    odd(n)[j]  = n! Gamma(j+1/2+sigma) / (j! Gamma(n+3/2+sigma)),      j <= n
    """

    def __init__(self, sigma: float, size: int):
        idx = np.arange(size + 2, dtype=float)
        self.lg_half = log_gamma(idx + 0.5 + sigma)
        self.lg_fact = log_gamma(idx + 1.0)

    def log_even(self, n: int) -> np.ndarray:
        j = np.arange(n)
        return self.lg_fact[n - 1] + self.lg_half[j] - self.lg_fact[j] - self.lg_half[n]

    def log_odd(self, n: int) -> np.ndarray:
        j = np.arange(n + 1)
        return self.lg_fact[n] + self.lg_half[j] - self.lg_fact[j] - self.lg_half[n + 1]


def _check_order(N: int) -> int:
    if int(N) != N or N < 1 or N > COEFFS.max_index:
        raise DomainError(f"Truncation order must lie in [1, {COEFFS.max_index}], got {N}")
    return int(N)


def sigma_table(sigma: float, u: float, N: int) -> np.ndarray:
    """Triangular table Sigma_{k,l} (k >= l, k + l even) for k, l < N.

    Sigma_{2m,0}   = prod_{i<=m} (1 - (1-u)/i)
    Sigma_{2m,2n}  = Sigma_{k-1,l-1} + u sum_{j<n} w_even(n)_j Sigma_{k,2j}
    Sigma_{2m+1,2n+1} = Sigma_{k-1,l-1} - u sum_{j<=n} w_odd(n)_j Sigma_{k-1,2j}
    Entries outside the triangle are 0.
    """
    N = _check_order(N)
    if not 0 < u < 1 or not sigma > u - 0.5:
        raise DomainError(f"Sigma table needs 0 < u < 1 and sigma > u - 1/2, got sigma={sigma}, u={u}")
    weights = _Weights(sigma, N)
    table = np.zeros((N, N))
    for k in range(N):
        m = k // 2
        for l in range(k % 2, k + 1, 2):
            n = l // 2
            if l == 0:
                table[k, 0] = math.exp(math.fsum(np.log1p(-(1 - u) / np.arange(1, m + 1)))) if m else 1.0
            elif k % 2 == 0:
                w = np.exp(weights.log_even(n))
                table[k, l] = table[k - 1, l - 1] + u * math.fsum(w * table[k, 0:2 * n:2])
            else:
                w = np.exp(weights.log_odd(n))
                table[k, l] = table[k - 1, l - 1] - u * math.fsum(w * table[k - 1, 0:2 * n + 1:2])
    return table


def sigma_row0_alternative(u: float, N: int) -> np.ndarray:
    """Sigma_{2m,0} by Sigma_{2m,0} = (u/m) sum_{j<m} Sigma_{2j,0}, for 2m < N."""
    count = (N + 1) // 2
    values = np.zeros(count)
    values[0] = 1.0
    for m in range(1, count):
        values[m] = u / m * math.fsum(values[:m])
    return values


def even_bound_factor(sigma: float, u: float, m: int, n: int) -> float:
    """Sigma_{2m,2n} <= (1 - u(1-u)/(m(n-1/2+sigma))) Sigma_{2m-2,2n-2} for 1 <= n <= m.

    Subtracting the odd recursion from the even one gives
    Sigma_{2m,2n} = Sigma_{2m-2,2n-2} + u sum_{j<n} w_j (Sigma_{2m,2j} - Sigma_{2m-2,2j})
    with w_{n-1} = 1/(n-1/2+sigma); row decrease and positivity bound the sum by its
    last term. Equality holds at n = 1.
    """
    return 1 - u * (1 - u) / (m * (n - 0.5 + sigma))


def sigma_bounds_report(sigma: float, u: float, N: int, slack: float = 1e-12) -> dict:
    """Positivity and monotonicity properties of the Sigma table.

    uniform_bound_violations counts the even pairs above the n-free factor
    1 - u(1-u)/m and is informational only.
    """
    table = sigma_table(sigma, u, N)
    report = {
        "positive": True,
        "strict_increase": True,
        "even_upper_bound": True,
        "uniform_bound_violations": 0,
        "odd_sandwich": True,
        "row_decrease": True,
        "alternative_row0_max_rel": 0.0,
    }
    for k in range(N):
        for l in range(k % 2, k + 1, 2):
            value = table[k, l]
            if not value > 0:
                report["positive"] = False
            m, n = k // 2, l // 2
            if k % 2 == 0 and n >= 1:
                if not table[k - 1, l - 1] < value:
                    report["strict_increase"] = False
                bound = even_bound_factor(sigma, u, m, n) * table[k - 2, l - 2]
                if value > bound * (1 + slack):
                    report["even_upper_bound"] = False
                if value > (1 - u * (1 - u) / m) * table[k - 2, l - 2] * (1 + slack):
                    report["uniform_bound_violations"] += 1
            if k % 2 == 0 and k > l:
                if value > (1 - (1 - u) / m) * table[k - 2, l] * (1 + slack):
                    report["row_decrease"] = False
            if k % 2 == 1 and n >= 1:
                factor = 1 - u / (n + 0.5 + sigma)
                if not factor * table[k - 2, l - 2] < value < factor * table[k - 1, l - 1]:
                    report["odd_sandwich"] = False
    direct = table[0::2, 0]
    alternative = sigma_row0_alternative(u, N)
    report["alternative_row0_max_rel"] = float(np.max(np.abs(direct - alternative) / direct))
    return report


def _signed_sqrt_terms(log_weights: np.ndarray, count: int) -> np.ndarray:
    """(-1)^{count-j} exp(log_weights/2) for j = 0..len-1."""
    j = np.arange(len(log_weights))
    signs = np.where((count - j) % 2 == 0, 1.0, -1.0)
    return signs * np.exp(0.5 * log_weights)


def d_table_recursive(sigma: float, u: float, N: int) -> np.ndarray:
    """Normalized d_{k,l} from the three recursion lemmas, d_{0,0} = 1."""
    N = _check_order(N)
    weights = _Weights(sigma, N)
    d = np.zeros((N, N))
    d[0, 0] = 1.0
    for k in range(1, N):
        m = k // 2
        for l in range(k % 2, k + 1, 2):
            n = l // 2
            if k % 2 == 0 and l == 0:
                w = _signed_sqrt_terms(weights.log_even(m), m)
                d[k, 0] = u / math.sqrt(m) * math.fsum(w * d[0:k:2, 0])
            elif k % 2 == 0:
                w = _signed_sqrt_terms(weights.log_even(n), n)
                d[k, l] = (math.sqrt(m / n) * d[k - 1, l - 1]
                           + u / math.sqrt(n) * math.fsum(w * d[k, 0:l:2]))
            else:
                half = m + 0.5 + sigma
                w = _signed_sqrt_terms(weights.log_odd(n), n)
                d[k, l] = (math.sqrt((n + 0.5 + sigma) / half) * d[k - 1, l - 1]
                           - u / math.sqrt(half) * math.fsum(w * d[k - 1, 0:l + 1:2]))
            d[l, k] = d[k, l]
    return d


def d_table_closed(sigma: float, u: float, N: int) -> np.ndarray:
    """Normalized d_{k,l} = (-1)^{m+n} Pi_{k,l} Sigma_{k,l}."""
    table = sigma_table(sigma, u, N)
    d = np.zeros((N, N))
    for k in range(N):
        for l in range(k % 2, k + 1, 2):
            m, n = k // 2, l // 2
            sign = 1.0 if (m + n) % 2 == 0 else -1.0
            d[k, l] = sign * pi_factor(sigma, k, l) * table[k, l]
            d[l, k] = d[k, l]
    return d


def _odd_embedding(even_block: np.ndarray, N: int) -> np.ndarray:
    """Place c_{sigma+1,k-1,l-1} at odd (k, l); the even sector is absent."""
    out = np.zeros((N, N))
    out[1::2, 1::2] = even_block[0:N - 1:2, 0:N - 1:2]
    return out


def _build(params: TParams, N: int, normalized: bool, method: Method, fill) -> CoeffMatrix:
    N = _check_order(N)
    family = CoeffFamily.D if normalized else CoeffFamily.C
    if params.odd_only:
        inner = _build(params.shifted(), N, normalized, method, fill)
        entries = _odd_embedding(inner.entries, N)
    else:
        entries = fill(params, N)
        if normalized and method is Method.QUADRATURE:
            entries = entries / c00(params)
        elif not normalized and method is not Method.QUADRATURE:
            entries = entries * c00(params)
    logger.debug("%s table of order %d for %s by %s", family.value, N, params, method.value)
    return CoeffMatrix(family=family, params=params, order=N, entries=entries, method=method)


def t_coeff_closed(params: TParams, k: int, l: int) -> float:
    """c_{k,l} by the closed form; 0 for mixed parity, symmetric in (k, l)."""
    if (k + l) % 2:
        return 0.0
    if params.odd_only:
        if k % 2 == 0:
            raise DomainError(f"sigma={params.sigma} only admits odd indices, got ({k}, {l})")
        return t_coeff_closed(params.shifted(), k - 1, l - 1)
    k, l = max(k, l), min(k, l)
    m, n = k // 2, l // 2
    table = sigma_table(params.sigma, params.u, k + 1)
    sign = 1.0 if (m + n) % 2 == 0 else -1.0
    return c00(params) * sign * pi_factor(params.sigma, k, l) * table[k, l]


@lru_cache(maxsize=32)
def t_matrix_closed(params: TParams, N: int = COEFFS.default_order, normalized: bool = False) -> CoeffMatrix:
    return _build(params, N, normalized, Method.CLOSED_FORM,
                  lambda p, n: d_table_closed(p.sigma, p.u, n))


def t_matrix_recursive(params: TParams, N: int = COEFFS.default_order, normalized: bool = False) -> CoeffMatrix:
    """Fill the N x N table by the recursion lemmas only, then scale by c_{0,0}."""
    return _build(params, N, normalized, Method.RECURSION,
                  lambda p, n: d_table_recursive(p.sigma, p.u, n))


def t_matrix_quadrature(params: TParams, N: int = 41, normalized: bool = False) -> CoeffMatrix:
    """Oracle table <phi_k, phi_l>_{sigma-u} by tanh-sinh quadrature."""
    return _build(params, N, normalized, Method.QUADRATURE,
                  lambda p, n: gram_matrix(p.basis, p.basis, p.sigma - p.u, n - 1))
