"""Hypothesis regions of the two-exponent perturbation theorem.

Each region is a list of clauses "antecedent => consequent". A point belongs
to a region when every clause holds, a clause holding when its antecedent is
false or one of its consequent alternatives is true. Comma lists are
normalized once, here:

    tau < a, b        ->  tau < min(a, b)
    a, b < tau        ->  max(a, b) < tau
    theta > a, b      ->  max(a, b) < theta
    a, b < 0          ->  max(a, b) < 0

Comparisons are exact. Every verdict carries a margin: positive inside,
negative outside, zero on a boundary.
"""
import logging
from collections import namedtuple
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Sequence, Tuple

from ..coeffs.params import CASE_TOL
from ..config import COEFFS
from ..errors import DomainError, HypothesisError

logger = logging.getLogger(__name__)

PairPoint = namedtuple("PairPoint", ["sigma", "tau"])
TriplePoint = namedtuple("TriplePoint", ["sigma", "tau", "theta"])
ExponentPoint = namedtuple("ExponentPoint", ["alpha", "beta", "gamma", "delta"])


class RegionId(Enum):
    """Named hypothesis regions"""
    J1 = "J1"
    J2 = "J2"
    K1 = "K1"
    K1p = "K1p"
    K2 = "K2"
    K2p = "K2p"
    S1 = "S1"
    S2 = "S2"


def _term(value) -> Callable:
    if callable(value):
        return value
    return lambda p, value=float(value): value


def _fold(terms, pick) -> Callable:
    if callable(terms) or isinstance(terms, (int, float)):
        return _term(terms)
    funcs = [_term(t) for t in terms]
    return lambda p: pick(f(p) for f in funcs)


@dataclass(frozen=True)
class Bound:
    """One normalized comparison lower op upper, op in {<, <=, ==}."""
    lower: Callable
    op: str
    upper: Callable

    def margin(self, point) -> float:
        lo, hi = self.lower(point), self.upper(point)
        if self.op == "==":
            return -abs(hi - lo)
        return hi - lo

    def holds(self, point) -> bool:
        lo, hi = self.lower(point), self.upper(point)
        if self.op == "<":
            return lo < hi
        if self.op == "<=":
            return lo <= hi
        return lo == hi


def lt(lower, upper) -> Bound:
    """max(lower...) < min(upper...)"""
    return Bound(_fold(lower, max), "<", _fold(upper, min))


def le(lower, upper) -> Bound:
    return Bound(_fold(lower, max), "<=", _fold(upper, min))


def eq(left, right) -> Bound:
    return Bound(_term(left), "==", _term(right))


@dataclass(frozen=True)
class Clause:
    """antecedent => alternative_1 or alternative_2 ..."""
    text: str
    antecedent: Tuple[Bound, ...]
    alternatives: Tuple[Tuple[Bound, ...], ...]

    def applies(self, point) -> bool:
        return all(b.holds(point) for b in self.antecedent)

    def holds(self, point) -> bool:
        if not self.applies(point):
            return True
        return any(all(b.holds(point) for b in alt) for alt in self.alternatives)

    def margin(self, point) -> float:
        antecedent = min((b.margin(point) for b in self.antecedent), default=float("inf"))
        consequent = max(min(b.margin(point) for b in alt) for alt in self.alternatives)
        return max(-antecedent, consequent)


def _clause(text, antecedent, *alternatives) -> Clause:
    return Clause(text, tuple(antecedent), tuple(tuple(alt) for alt in alternatives))


def _S(p):
    return p.sigma


def _T(p):
    return p.tau


def _H(p):
    return p.theta


HALF = 0.5

_J1 = (
    _clause("1/2 <= tau < sigma => sigma-1 < tau < sigma/2+1/4",
            [le(HALF, _T), lt(_T, _S)],
            [lt(lambda p: p.sigma - 1, _T), lt(_T, lambda p: p.sigma / 2 + 0.25)]),
    _clause("1/2, sigma <= tau => tau < sigma/2+1/4, sigma+1",
            [le((HALF, _S), _T)],
            [lt(_T, (lambda p: p.sigma / 2 + 0.25, lambda p: p.sigma + 1))]),
    _clause("tau < 1/2, sigma => sigma/3, sigma-1 < tau < sigma/2+1/4",
            [lt(_T, (HALF, _S))],
            [lt((lambda p: p.sigma / 3, lambda p: p.sigma - 1), _T),
             lt(_T, lambda p: p.sigma / 2 + 0.25)]),
    _clause("sigma <= tau < 1/2 => -sigma < tau < sigma/2+1/4, sigma+1",
            [le(_S, _T), lt(_T, HALF)],
            [lt(lambda p: -p.sigma, _T),
             lt(_T, (lambda p: p.sigma / 2 + 0.25, lambda p: p.sigma + 1))]),
)

_J2 = (
    _clause("1/2 <= tau < sigma-1/2 => sigma-1 < tau < sigma/2+1/4",
            [le(HALF, _T), lt(_T, lambda p: p.sigma - 0.5)],
            [lt(lambda p: p.sigma - 1, _T), lt(_T, lambda p: p.sigma / 2 + 0.25)]),
    _clause("1/2, sigma-1/2 <= tau => tau < sigma/2+1/4, sigma",
            [le((HALF, lambda p: p.sigma - 0.5), _T)],
            [lt(_T, (lambda p: p.sigma / 2 + 0.25, _S))]),
    _clause("0 < tau < 1/2, sigma-1/2 => (-sigma/3, sigma-1 < tau < sigma/2+1/4) "
            "or (sigma-1 < tau < sigma/2-1/4)",
            [lt(0.0, _T), lt(_T, (HALF, lambda p: p.sigma - 0.5))],
            [lt((lambda p: -p.sigma / 3, lambda p: p.sigma - 1), _T),
             lt(_T, lambda p: p.sigma / 2 + 0.25)],
            [lt(lambda p: p.sigma - 1, _T), lt(_T, lambda p: p.sigma / 2 - 0.25)]),
    _clause("0 < tau < 1/2, sigma-1/2 <= tau => (1-sigma < tau < sigma/2+1/4, sigma) "
            "or (tau < sigma/2-1/4, sigma)",
            [lt(0.0, _T), lt(_T, HALF), le(lambda p: p.sigma - 0.5, _T)],
            [lt(lambda p: 1 - p.sigma, _T), lt(_T, (lambda p: p.sigma / 2 + 0.25, _S))],
            [lt(_T, (lambda p: p.sigma / 2 - 0.25, _S))]),
    _clause("0 = tau < sigma-1/2 => 1/2 < sigma < 1",
            [eq(_T, 0.0), lt(_T, lambda p: p.sigma - 0.5)],
            [lt(HALF, _S), lt(_S, 1.0)]),
    _clause("sigma-1/2 <= tau = 0 => 1/2 < sigma",
            [le(lambda p: p.sigma - 0.5, _T), eq(_T, 0.0)],
            [lt(HALF, _S)]),
    _clause("tau < 0, sigma-1/2 => 1/4-sigma/2, (sigma-1)/3, sigma-1 < tau",
            [lt(_T, (0.0, lambda p: p.sigma - 0.5))],
            [lt((lambda p: 0.25 - p.sigma / 2, lambda p: (p.sigma - 1) / 3, lambda p: p.sigma - 1), _T)]),
    _clause("sigma-1/2 <= tau < 0 => 1/4-sigma/2, -sigma < tau < sigma",
            [le(lambda p: p.sigma - 0.5, _T), lt(_T, 0.0)],
            [lt((lambda p: 0.25 - p.sigma / 2, lambda p: -p.sigma), _T), lt(_T, _S)]),
)

_K1 = (
    _clause("theta <= sigma-1, theta < tau+1 => theta > sigma/2-3/4, (sigma+tau)/4",
            [le(_H, lambda p: p.sigma - 1), lt(_H, lambda p: p.tau + 1)],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("tau+1 <= theta <= sigma-1 => theta > sigma/2-3/4, (sigma-tau)/2-1",
            [le(lambda p: p.tau + 1, _H), le(_H, lambda p: p.sigma - 1)],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.sigma - p.tau) / 2 - 1), _H)]),
    _clause("sigma-1 < theta < tau+1 => theta > sigma/2-3/4, (tau-sigma)/2+1, (sigma+tau)/4",
            [lt(lambda p: p.sigma - 1, _H), lt(_H, lambda p: p.tau + 1)],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.tau - p.sigma) / 2 + 1,
                 lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma-1 < theta, tau+1 <= theta => theta > sigma/2-3/4, (sigma-tau)/2-1, sigma+tau > 0",
            [lt(lambda p: p.sigma - 1, _H), le(lambda p: p.tau + 1, _H)],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.sigma - p.tau) / 2 - 1), _H),
             lt(0.0, lambda p: p.sigma + p.tau)]),
)

_K1p = (
    _clause("theta < sigma, theta <= tau => theta > tau/2-1/4, (sigma+tau)/4",
            [lt(_H, _S), le(_H, _T)],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma <= theta <= tau => theta > tau/2-1/4, (tau-sigma)/2",
            [le(_S, _H), le(_H, _T)],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.tau - p.sigma) / 2), _H)]),
    _clause("tau < theta < sigma => theta > tau/2-1/4, (sigma-tau)/2, (sigma+tau)/4",
            [lt(_T, _H), lt(_H, _S)],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.sigma - p.tau) / 2,
                 lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma <= theta, tau < theta => theta > tau/2-1/4, (tau-sigma)/2, sigma+tau > 0",
            [le(_S, _H), lt(_T, _H)],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.tau - p.sigma) / 2), _H),
             lt(0.0, lambda p: p.sigma + p.tau)]),
)

_K2 = (
    _clause("theta <= sigma-1, theta < tau+1/2 => theta > sigma/2-3/4, (sigma+tau)/4",
            [le(_H, lambda p: p.sigma - 1), lt(_H, lambda p: p.tau + 0.5)],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("tau+1/2 <= theta <= sigma-1 => theta > sigma/2-3/4, (sigma-tau-1)/2",
            [le(lambda p: p.tau + 0.5, _H), le(_H, lambda p: p.sigma - 1)],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.sigma - p.tau - 1) / 2), _H)]),
    _clause("sigma-1 < theta < sigma-1/2, tau+1/2 => "
            "(theta > sigma/2-3/4, (tau-sigma)/2+1, (sigma+tau)/4) or (theta > sigma/2-1/4, (sigma+tau)/4)",
            [lt(lambda p: p.sigma - 1, _H), lt(_H, (lambda p: p.sigma - 0.5, lambda p: p.tau + 0.5))],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.tau - p.sigma) / 2 + 1,
                 lambda p: (p.sigma + p.tau) / 4), _H)],
            [lt((lambda p: p.sigma / 2 - 0.25, lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma-1 < theta < sigma-1/2, tau+1/2 <= theta => "
            "(theta > sigma/2-3/4, (sigma-tau-1)/2, sigma+tau > 1) or (theta > sigma/2-1/4, (sigma-tau-1)/2)",
            [lt(lambda p: p.sigma - 1, _H), lt(_H, lambda p: p.sigma - 0.5), le(lambda p: p.tau + 0.5, _H)],
            [lt((lambda p: p.sigma / 2 - 0.75, lambda p: (p.sigma - p.tau - 1) / 2), _H),
             lt(1.0, lambda p: p.sigma + p.tau)],
            [lt((lambda p: p.sigma / 2 - 0.25, lambda p: (p.sigma - p.tau - 1) / 2), _H)]),
    _clause("sigma-1/2 = theta < tau+1/2 => sigma > 1/2, (tau+2)/3",
            [eq(lambda p: p.sigma - 0.5, _H), lt(_H, lambda p: p.tau + 0.5)],
            [lt((HALF, lambda p: (p.tau + 2) / 3), _S)]),
    _clause("tau+1/2 <= theta = sigma-1/2 => sigma > 1/2, -tau",
            [le(lambda p: p.tau + 0.5, _H), eq(_H, lambda p: p.sigma - 0.5)],
            [lt((HALF, lambda p: -p.tau), _S)]),
    _clause("sigma-1/2 < theta < tau+1/2 => theta > sigma/2-1/4, (tau-sigma+1)/2, (sigma+tau)/4",
            [lt(lambda p: p.sigma - 0.5, _H), lt(_H, lambda p: p.tau + 0.5)],
            [lt((lambda p: p.sigma / 2 - 0.25, lambda p: (p.tau - p.sigma + 1) / 2,
                 lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma-1/2 < theta, tau+1/2 <= theta => theta > sigma/2-1/4, (sigma-tau-1)/2, sigma+tau > 0",
            [lt(lambda p: p.sigma - 0.5, _H), le(lambda p: p.tau + 0.5, _H)],
            [lt((lambda p: p.sigma / 2 - 0.25, lambda p: (p.sigma - p.tau - 1) / 2), _H),
             lt(0.0, lambda p: p.sigma + p.tau)]),
)

_K2p = (
    _clause("theta <= sigma-1/2, theta < tau => theta > tau/2-1/4, (sigma+tau)/4",
            [le(_H, lambda p: p.sigma - 0.5), lt(_H, _T)],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma-1/2 <= theta <= tau => theta > tau/2-1/4, (tau-sigma+1)/2",
            [le(lambda p: p.sigma - 0.5, _H), le(_H, _T)],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.tau - p.sigma + 1) / 2), _H)]),
    _clause("tau < theta < sigma-1/2, tau+1/2 => "
            "(theta > tau/2-1/4, (sigma-tau)/2, (sigma+tau)/4) or (theta > tau/2+1/4, (sigma+tau)/4)",
            [lt(_T, _H), lt(_H, (lambda p: p.sigma - 0.5, lambda p: p.tau + 0.5))],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.sigma - p.tau) / 2,
                 lambda p: (p.sigma + p.tau) / 4), _H)],
            [lt((lambda p: p.tau / 2 + 0.25, lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma-1/2 <= theta, tau < theta < tau+1/2 => "
            "(theta > tau/2-1/4, (tau-sigma+1)/2, sigma+tau > 1) or (theta > tau/2+1/4, (tau-sigma+1)/2)",
            [le(lambda p: p.sigma - 0.5, _H), lt(_T, _H), lt(_H, lambda p: p.tau + 0.5)],
            [lt((lambda p: p.tau / 2 - 0.25, lambda p: (p.tau - p.sigma + 1) / 2), _H),
             lt(1.0, lambda p: p.sigma + p.tau)],
            [lt((lambda p: p.tau / 2 + 0.25, lambda p: (p.tau - p.sigma + 1) / 2), _H)]),
    _clause("tau+1/2 = theta < sigma-1/2 => tau > -1/2, (sigma-2)/3",
            [eq(lambda p: p.tau + 0.5, _H), lt(_H, lambda p: p.sigma - 0.5)],
            [lt((-HALF, lambda p: (p.sigma - 2) / 3), _T)]),
    _clause("sigma-1/2 <= theta = tau+1/2 => tau > -1/2, -sigma",
            [le(lambda p: p.sigma - 0.5, _H), eq(_H, lambda p: p.tau + 0.5)],
            [lt((-HALF, lambda p: -p.sigma), _T)]),
    _clause("tau+1/2 < theta < sigma-1/2 => theta > tau/2+1/4, (sigma-tau-1)/2, (sigma+tau)/4",
            [lt(lambda p: p.tau + 0.5, _H), lt(_H, lambda p: p.sigma - 0.5)],
            [lt((lambda p: p.tau / 2 + 0.25, lambda p: (p.sigma - p.tau - 1) / 2,
                 lambda p: (p.sigma + p.tau) / 4), _H)]),
    _clause("sigma-1/2 <= theta, tau+1/2 < theta => theta > tau/2+1/4, (tau-sigma+1)/2, sigma+tau > 0",
            [le(lambda p: p.sigma - 0.5, _H), lt(lambda p: p.tau + 0.5, _H)],
            [lt((lambda p: p.tau / 2 + 0.25, lambda p: (p.tau - p.sigma + 1) / 2), _H),
             lt(0.0, lambda p: p.sigma + p.tau)]),
)


def _sum(*names, shift=0.0):
    return lambda p: sum(getattr(p, name) for name in names) + shift


def _neg(*terms) -> Bound:
    """terms... < 0"""
    return lt(terms, 0.0)


def _G(p):
    return p.gamma


def _D(p):
    return p.delta


_S1 = (
    _clause("gamma >= 0, delta > -1 => alpha+gamma, alpha+beta+gamma+delta+1 < 0",
            [le(0.0, _G), lt(-1.0, _D)],
            [_neg(_sum("alpha", "gamma"), _sum("alpha", "beta", "gamma", "delta", shift=1))]),
    _clause("gamma >= 0, delta <= -1 => alpha+gamma, alpha+beta+gamma < 0",
            [le(0.0, _G), le(_D, -1.0)],
            [_neg(_sum("alpha", "gamma"), _sum("alpha", "beta", "gamma"))]),
    _clause("gamma < 0, delta > -1 => alpha+gamma, alpha+beta+delta+1, alpha+beta+gamma+delta+1 < 0",
            [lt(_G, 0.0), lt(-1.0, _D)],
            [_neg(_sum("alpha", "gamma"), _sum("alpha", "beta", "delta", shift=1),
                  _sum("alpha", "beta", "gamma", "delta", shift=1))]),
    _clause("gamma < 0, delta <= -1 => alpha+beta, alpha+gamma, alpha+beta+gamma < 0",
            [lt(_G, 0.0), le(_D, -1.0)],
            [_neg(_sum("alpha", "beta"), _sum("alpha", "gamma"), _sum("alpha", "beta", "gamma"))]),
)

_S2 = (
    _clause("gamma >= 0, delta > -1/2 => alpha+gamma, alpha+beta+gamma+delta+1 < 0",
            [le(0.0, _G), lt(-HALF, _D)],
            [_neg(_sum("alpha", "gamma"), _sum("alpha", "beta", "gamma", "delta", shift=1))]),
    _clause("gamma >= 0, delta <= -1/2 => alpha+gamma, alpha+beta+gamma+1/2 < 0",
            [le(0.0, _G), le(_D, -HALF)],
            [_neg(_sum("alpha", "gamma"), _sum("alpha", "beta", "gamma", shift=HALF))]),
    _clause("-1/2 < gamma < 0, delta > -1/2 => "
            "(alpha+gamma, alpha+beta+delta+1, alpha+beta+gamma+delta+1 < 0) "
            "or (alpha+gamma+1/2, alpha+beta+gamma+delta+1 < 0)",
            [lt(-HALF, _G), lt(_G, 0.0), lt(-HALF, _D)],
            [_neg(_sum("alpha", "gamma"), _sum("alpha", "beta", "delta", shift=1),
                  _sum("alpha", "beta", "gamma", "delta", shift=1))],
            [_neg(_sum("alpha", "gamma", shift=HALF), _sum("alpha", "beta", "gamma", "delta", shift=1))]),
    _clause("-1/2 < gamma < 0, delta <= -1/2 => "
            "(alpha+gamma, alpha+beta+1/2, alpha+beta+gamma+1/2 < 0) "
            "or (alpha+gamma+1/2, alpha+beta+gamma+1/2 < 0)",
            [lt(-HALF, _G), lt(_G, 0.0), le(_D, -HALF)],
            [_neg(_sum("alpha", "gamma"), _sum("alpha", "beta", shift=HALF),
                  _sum("alpha", "beta", "gamma", shift=HALF))],
            [_neg(_sum("alpha", "gamma", shift=HALF), _sum("alpha", "beta", "gamma", shift=HALF))]),
    _clause("gamma = -1/2, delta > -1/2 => alpha, alpha+beta+delta+1/2 < 0",
            [eq(_G, -HALF), lt(-HALF, _D)],
            [_neg(_sum("alpha"), _sum("alpha", "beta", "delta", shift=HALF))]),
    _clause("gamma = -1/2, delta <= -1/2 => alpha, alpha+beta < 0",
            [eq(_G, -HALF), le(_D, -HALF)],
            [_neg(_sum("alpha"), _sum("alpha", "beta"))]),
    _clause("gamma < -1/2, delta > -1/2 => alpha+gamma+1/2, alpha+beta+delta+1/2, alpha+beta+gamma+delta+1 < 0",
            [lt(_G, -HALF), lt(-HALF, _D)],
            [_neg(_sum("alpha", "gamma", shift=HALF), _sum("alpha", "beta", "delta", shift=HALF),
                  _sum("alpha", "beta", "gamma", "delta", shift=1))]),
    _clause("gamma < -1/2, delta <= -1/2 => alpha+gamma+1/2, alpha+beta, alpha+beta+gamma+1/2 < 0",
            [lt(_G, -HALF), le(_D, -HALF)],
            [_neg(_sum("alpha", "gamma", shift=HALF), _sum("alpha", "beta"),
                  _sum("alpha", "beta", "gamma", shift=HALF))]),
)

REGION_CLAUSES = {
    RegionId.J1: _J1,
    RegionId.J2: _J2,
    RegionId.K1: _K1,
    RegionId.K1p: _K1p,
    RegionId.K2: _K2,
    RegionId.K2p: _K2p,
    RegionId.S1: _S1,
    RegionId.S2: _S2,
}

REGION_POINT = {
    RegionId.J1: PairPoint,
    RegionId.J2: PairPoint,
    RegionId.K1: TriplePoint,
    RegionId.K1p: TriplePoint,
    RegionId.K2: TriplePoint,
    RegionId.K2p: TriplePoint,
    RegionId.S1: ExponentPoint,
    RegionId.S2: ExponentPoint,
}


@dataclass(frozen=True)
class ClauseVerdict:
    text: str
    applies: bool
    holds: bool
    margin: float


@dataclass(frozen=True)
class RegionVerdict:
    """Membership of one point with the per-clause breakdown."""
    region: RegionId
    point: Tuple[float, ...]
    member: bool
    clauses: List[ClauseVerdict] = field(default_factory=list)

    @property
    def margin(self) -> float:
        return min(c.margin for c in self.clauses)

    @property
    def violated(self) -> List[str]:
        return [c.text for c in self.clauses if not c.holds]

    def to_json(self) -> dict:
        return {
            "region": self.region.value,
            "point": list(self.point),
            "member": self.member,
            "margin": self.margin,
            "clauses": [
                {"text": c.text, "applies": c.applies, "holds": c.holds, "margin": c.margin}
                for c in self.clauses
            ],
        }


def as_region(region) -> RegionId:
    try:
        return region if isinstance(region, RegionId) else RegionId(region)
    except ValueError:
        raise DomainError(f"Unknown region: {region}") from None


def _as_point(region: RegionId, point: Sequence[float]):
    kind = REGION_POINT[region]
    if len(point) != len(kind._fields):
        raise DomainError(
            f"Region {region.value} takes points with {len(kind._fields)} coordinates, got {len(point)}"
        )
    return kind(*(float(x) for x in point))


def region_verdict(region, point: Sequence[float]) -> RegionVerdict:
    """Evaluate every clause of a region at a point."""
    region = as_region(region)
    p = _as_point(region, point)
    clauses = [
        ClauseVerdict(c.text, c.applies(p), c.holds(p), c.margin(p))
        for c in REGION_CLAUSES[region]
    ]
    member = all(c.holds for c in clauses)
    return RegionVerdict(region=region, point=tuple(p), member=member, clauses=clauses)


def region_member(region, point: Sequence[float]) -> bool:
    """True when the point satisfies every clause of the region.

    Raises:
        DomainError: When the point has the wrong number of coordinates
    """
    region = as_region(region)
    p = _as_point(region, point)
    return all(c.holds(p) for c in REGION_CLAUSES[region])


def j1_sufficient(sigma: float, tau: float) -> bool:
    """-sigma, sigma/3, sigma-1 < tau < sigma/2+1/4, sigma+1 (implies J1)."""
    return max(-sigma, sigma / 3, sigma - 1) < tau < min(sigma / 2 + 0.25, sigma + 1)


def k1_sufficient(sigma: float, tau: float, theta: float) -> bool:
    """Lower bounds on theta with sigma + tau > 0 (implies K1 and K1')."""
    floor = max(sigma / 2 - 0.75, (sigma - tau) / 2, (tau - sigma) / 2 + 1, (sigma + tau) / 4, tau / 2 - 0.25)
    return theta > floor and sigma + tau > 0


def s1_sufficient(alpha: float, beta: float, gamma: float, delta: float) -> bool:
    """Five negative exponent sums (implies S1)."""
    sums = (alpha + beta, alpha + gamma, alpha + beta + gamma,
            alpha + beta + delta + 1, alpha + beta + gamma + delta + 1)
    return max(sums) < 0


def exponent_lemma_holds(alpha: float, beta: float, gamma: float) -> bool:
    """alpha+beta, alpha+gamma, alpha+beta+gamma < 0.

    Under this condition (m+1)^alpha (n+1)^beta (m-n+1)^gamma decays like
    (m+1)^-omega (n+1)^-omega over m >= n for some omega > 0.
    """
    return max(alpha + beta, alpha + gamma, alpha + beta + gamma) < 0


def s_point_for_case(case: str, sigma: float, tau: float, theta: float) -> List[ExponentPoint]:
    """Exponent quadruples whose S-membership bounds the c' decay.

    Case "b" (theta = tau) gives one point, case "d" a point and its swap.
    """
    alpha = 0.25 - sigma / 2
    beta = -0.25 - tau / 2
    if case == "b":
        v = sigma + tau - 2 * theta
        return [ExponentPoint(alpha, beta, tau - 0.5, v - 1)]
    if case == "d":
        gamma, delta = sigma - theta - 1, tau - theta
        return [ExponentPoint(alpha, beta, gamma, delta), ExponentPoint(beta, alpha, delta, gamma)]
    raise DomainError(f"No exponent mapping for case {case!r}")


def in_union(regions: Sequence[RegionId], point: Sequence[float]) -> bool:
    return any(region_member(r, point) for r in regions)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= CASE_TOL


def _in_minus_naturals(value: float) -> bool:
    nearest = round(value)
    return nearest <= 0 and abs(value - nearest) < COEFFS.degeneracy_tol


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the two-exponent theorem hypotheses at one point."""
    ok: bool
    case: str
    violated: List[str]
    margins: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"ok": self.ok, "case": self.case, "violated": list(self.violated), "margins": dict(self.margins)}


_CASE_A = _clause("(a) sigma-1 < tau < sigma+1, 2 sigma+1/2",
                  [],
                  [lt(lambda p: p.sigma - 1, _T),
                   lt(_T, (lambda p: p.sigma + 1, lambda p: 2 * p.sigma + 0.5))])
_CASE_C = _clause("(c) tau < 3 sigma/2-9/4, sigma-5/3",
                  [],
                  [lt(_T, (lambda p: 1.5 * p.sigma - 2.25, lambda p: p.sigma - 5.0 / 3.0))])


def _consequent_margin(clause: Clause, point) -> float:
    return max(min(b.margin(point) for b in alt) for alt in clause.alternatives)


def _applicable_case(sigma: float, tau: float, theta: float) -> str:
    sigma_theta = _close(sigma, theta)
    tau_theta = _close(tau, theta)
    if sigma_theta and not tau_theta and not _in_minus_naturals(tau - sigma):
        return "a"
    if not sigma_theta and tau_theta and not _in_minus_naturals(sigma - tau):
        return "b"
    if not sigma_theta and _close(theta, tau + 1) and not _in_minus_naturals(sigma - tau - 1):
        return "c"
    if (not sigma_theta and not tau_theta
            and not _in_minus_naturals(sigma - theta) and not _in_minus_naturals(tau - theta)):
        return "d"
    return "vacuous"


def theorem_V_hypotheses(sigma: float, tau: float, theta: float, u: float) -> HypothesisReport:
    """Check the standing hypotheses and the one applicable case (a)-(d).

    Never raises; use require_theorem_V for the raising form.
    """
    violated = []
    margins = {
        "sigma > u-1/2": sigma - (u - 0.5),
        "tau > u-3/2": tau - (u - 1.5),
        "theta > -1/2": theta + 0.5,
    }
    violated.extend(name for name, margin in margins.items() if not margin > 0)

    case = _applicable_case(sigma, tau, theta)
    point = TriplePoint(sigma, tau, theta)
    if case == "a":
        margins[_CASE_A.text] = _consequent_margin(_CASE_A, point)
        if not _CASE_A.holds(point):
            violated.append(_CASE_A.text)
    elif case == "b":
        pair = (sigma, tau)
        verdicts = [region_verdict(r, pair) for r in (RegionId.J1, RegionId.J2)]
        margins["(b) (sigma, tau) in J1 u J2"] = max(v.margin for v in verdicts)
        if not any(v.member for v in verdicts):
            violated.append("(b) (sigma, tau) in J1 u J2")
    elif case == "c":
        margins[_CASE_C.text] = _consequent_margin(_CASE_C, point)
        if not _CASE_C.holds(point):
            violated.append(_CASE_C.text)
    elif case == "d":
        left = in_union((RegionId.K1, RegionId.K2), point)
        right = in_union((RegionId.K1p, RegionId.K2p), point)
        if not left:
            violated.append("(d) (sigma, tau, theta) in K1 u K2")
        if not right:
            violated.append("(d) (sigma, tau, theta) in K1' u K2'")
    else:
        logger.warning("No case of the hypotheses applies to sigma=%g, tau=%g, theta=%g", sigma, tau, theta)

    return HypothesisReport(ok=not violated, case=case, violated=violated, margins=margins)


def require_theorem_V(sigma: float, tau: float, theta: float, u: float) -> HypothesisReport:
    """theorem_V_hypotheses, raising HypothesisError when they fail."""
    report = theorem_V_hypotheses(sigma, tau, theta, u)
    if not report.ok:
        raise HypothesisError(
            f"Hypotheses fail for sigma={sigma}, tau={tau}, theta={theta}, u={u}: "
            + "; ".join(report.violated),
            violated=report.violated,
        )
    return report
