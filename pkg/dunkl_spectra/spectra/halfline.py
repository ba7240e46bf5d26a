"""Indicial roots and direct half-line forms of the operators P and Q.

P = H - 2 c1 x^-1 d/dx + c2 x^-2 on L^2_{c1,+} conjugates by x^a to the even
sector of U_sigma with sigma = a + c1; Q = H - 2 d1 (d/dx) x^-1 + d2 x^-2
conjugates by x^b to the odd sector of U_tau with tau = b + d1.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import List, Tuple

import numpy as np

from ..basis import BasisParams, hermite_derivative_table
from ..errors import DomainError
from ..oracle import QuadratureSpec, integrate_table
from .assemblers import get_assembler
from .base import OperatorKind, OperatorSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndicialRoot:
    """One root of the indicial equation with its basis exponent."""
    root: float
    exponent: float
    admissible: bool
    condition: str

    def to_json(self) -> dict:
        return {"root": self.root, "exponent": self.exponent,
                "admissible": self.admissible, "condition": self.condition}


def halfline_reduce(kind, coefficients: Tuple[float, float], u: float) -> List[IndicialRoot]:
    """Both roots of a^2 + (2c1-1)a - c2 = 0 (P) or b^2 + (2d1+1)b - d2 = 0 (Q), ascending.

    Admissibility is sigma > u - 1/2 (P) or tau > u - 3/2 (Q). Pass u = 0 for an
    unperturbed operator. Neither root is labelled as the minimal or maximal extension.

    Raises:
        DomainError: For a negative discriminant or a kind other than P and Q
    """
    kind = OperatorKind(kind) if not isinstance(kind, OperatorKind) else kind
    first, second = coefficients
    if kind is OperatorKind.P:
        linear, floor, name = 2 * first - 1, u - 0.5, "sigma"
    elif kind is OperatorKind.Q:
        linear, floor, name = 2 * first + 1, u - 1.5, "tau"
    else:
        raise DomainError(f"halfline_reduce needs kind P or Q, got {kind.value}")

    discriminant = linear * linear + 4 * second
    if discriminant < 0:
        raise DomainError(f"Indicial equation of {kind.value}{coefficients} has complex roots "
                          f"(discriminant {discriminant:g})")
    half_width = math.sqrt(discriminant) / 2
    roots = sorted({-linear / 2 - half_width, -linear / 2 + half_width})
    result = []
    for root in roots:
        exponent = root + first
        result.append(IndicialRoot(root, exponent, exponent > floor, f"{name} = {exponent:g} > {floor:g}"))
    logger.debug("%s%s roots: %s", kind.value, coefficients, [r.root for r in result])
    return result


def _potential(spec: OperatorSpec) -> float:
    """Coefficient of x^-2 once the first-order term is folded into the weight: c2 (P), 2 d1 + d2 (Q)."""
    if spec.kind is OperatorKind.P:
        return spec.c2
    return 2 * spec.d1 + spec.d2


def assemble_halfline_direct(spec: OperatorSpec, abs_tol: float = 1e-13, rel_tol: float = 1e-12) -> np.ndarray:
    """Matrix of the P or Q form computed on the half line, without the U blocks.

    The basis is 2^{1/2} x^r phi_{varsigma,k} restricted to x > 0, k even (P) or
    odd (Q), r the chosen root a or b; it is orthonormal in L^2(x^{2 c1} dx) or
    L^2(x^{2 d1} dx). Entries are

        2 int_0^inf [(phi_k' + r phi_k/x)(phi_l' + r phi_l/x)
                     + (s^2 x^2 + V x^-2 + xi x^-2u) phi_k phi_l] x^{2 varsigma} dx

    with V = c2 (P) or 2 d1 + d2 (Q), plus the shift on the diagonal.

    Raises:
        DomainError: For a kind other than P and Q, or when x^-2 terms are present
            and the integrand is not integrable at the origin
    """
    if spec.kind not in (OperatorKind.P, OperatorKind.Q):
        raise DomainError(f"assemble_halfline_direct needs kind P or Q, got {spec.kind.value}")
    assembler = get_assembler(spec.kind)
    varsigma, _ = assembler.exponents(spec)
    k = assembler.indices(spec)
    root = spec.a if spec.kind is OperatorKind.P else spec.b
    potential = _potential(spec)
    odd = spec.kind is OperatorKind.Q
    if not varsigma > -0.5:
        raise DomainError(f"Direct {spec.kind.value} form needs the full basis, got exponent {varsigma}")
    # phi_k behaves like x^parity at the origin
    parity = 1 if odd else 0
    singular = root != 0 or potential != 0
    if singular and not varsigma + parity > 0.5:
        raise DomainError(f"Direct {spec.kind.value} form needs exponent + parity > 1/2, got {varsigma}")
    if spec.xi != 0 and not varsigma + parity > spec.u - 0.5:
        raise DomainError(f"Direct {spec.kind.value} form needs exponent + parity > u - 1/2, got {varsigma}")
    params = BasisParams(varsigma, spec.s)
    bounds = QuadratureSpec(kappa=varsigma, half_line=True, abs_tol=abs_tol, rel_tol=rel_tol,
                            s=spec.s, degree=int(k[-1]))
    quad = replace(bounds, kappa=0.0)

    def integrand(x):
        values, slopes = hermite_derivative_table(params, int(k[-1]), x)
        values, slopes = values[k], slopes[k]
        reduced = values / x if odd else values
        gradient = slopes * x ** varsigma
        terms = [(spec.s ** 2, values * x ** (varsigma + 1))]
        if spec.xi != 0:
            terms.append((spec.xi, reduced * x ** (varsigma + parity - spec.u)))
        if singular:
            inverse = reduced * x ** (varsigma + parity - 1)
            gradient = gradient + root * inverse
            if potential != 0:
                terms.append((potential, inverse))
        total = gradient[:, None, :] * gradient[None, :, :]
        for coefficient, table in terms:
            total = total + coefficient * table[:, None, :] * table[None, :, :]
        return total

    half = integrate_table(integrand, quad, f"{spec.kind.value} half-line form")
    shift = spec.shift if not odd or spec.shift_odd is None else spec.shift_odd
    matrix = 2.0 * half + shift * np.eye(k.size)
    logger.debug("Direct %s form of order %d, x_max=%.2f", spec.kind.value, k.size, quad.x_max)
    return 0.5 * (matrix + matrix.T)
