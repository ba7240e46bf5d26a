import json

import numpy as np
import pytest

from ..errors import DomainError, HypothesisError
from .regions import (
    RegionId,
    exponent_lemma_holds,
    j1_sufficient,
    k1_sufficient,
    region_member,
    region_verdict,
    require_theorem_V,
    s1_sufficient,
    s_point_for_case,
    theorem_V_hypotheses,
)


# Second transcription of the region definitions, written as plain
# comparisons. It is the oracle for the clause table.
def implies(a, b):
    return (not a) or b


def j1_oracle(s, t):
    return all([
        implies(0.5 <= t < s, s - 1 < t < s / 2 + 0.25),
        implies(0.5 <= t and s <= t, t < s / 2 + 0.25 and t < s + 1),
        implies(t < 0.5 and t < s, s / 3 < t and s - 1 < t and t < s / 2 + 0.25),
        implies(s <= t < 0.5, -s < t < s / 2 + 0.25 and t < s + 1),
    ])


def j2_oracle(s, t):
    return all([
        implies(0.5 <= t < s - 0.5, s - 1 < t < s / 2 + 0.25),
        implies(0.5 <= t and s - 0.5 <= t, t < s / 2 + 0.25 and t < s),
        implies(0 < t < 0.5 and t < s - 0.5,
                (-s / 3 < t and s - 1 < t < s / 2 + 0.25) or (s - 1 < t < s / 2 - 0.25)),
        implies(0 < t < 0.5 and s - 0.5 <= t,
                (1 - s < t < s / 2 + 0.25 and t < s) or (t < s / 2 - 0.25 and t < s)),
        implies(t == 0 and t < s - 0.5, 0.5 < s < 1),
        implies(s - 0.5 <= t == 0, 0.5 < s),
        implies(t < 0 and t < s - 0.5, 0.25 - s / 2 < t and (s - 1) / 3 < t and s - 1 < t),
        implies(s - 0.5 <= t < 0, 0.25 - s / 2 < t and -s < t < s),
    ])


def k1_oracle(s, t, h):
    return all([
        implies(h <= s - 1 and h < t + 1, h > s / 2 - 0.75 and h > (s + t) / 4),
        implies(t + 1 <= h <= s - 1, h > s / 2 - 0.75 and h > (s - t) / 2 - 1),
        implies(s - 1 < h < t + 1, h > s / 2 - 0.75 and h > (t - s) / 2 + 1 and h > (s + t) / 4),
        implies(s - 1 < h and t + 1 <= h, h > s / 2 - 0.75 and h > (s - t) / 2 - 1 and s + t > 0),
    ])


def k1p_oracle(s, t, h):
    return all([
        implies(h < s and h <= t, h > t / 2 - 0.25 and h > (s + t) / 4),
        implies(s <= h <= t, h > t / 2 - 0.25 and h > (t - s) / 2),
        implies(t < h < s, h > t / 2 - 0.25 and h > (s - t) / 2 and h > (s + t) / 4),
        implies(s <= h and t < h, h > t / 2 - 0.25 and h > (t - s) / 2 and s + t > 0),
    ])


def k2_oracle(s, t, h):
    return all([
        implies(h <= s - 1 and h < t + 0.5, h > s / 2 - 0.75 and h > (s + t) / 4),
        implies(t + 0.5 <= h <= s - 1, h > s / 2 - 0.75 and h > (s - t - 1) / 2),
        implies(s - 1 < h < s - 0.5 and h < t + 0.5,
                (h > s / 2 - 0.75 and h > (t - s) / 2 + 1 and h > (s + t) / 4)
                or (h > s / 2 - 0.25 and h > (s + t) / 4)),
        implies(s - 1 < h < s - 0.5 and t + 0.5 <= h,
                (h > s / 2 - 0.75 and h > (s - t - 1) / 2 and s + t > 1)
                or (h > s / 2 - 0.25 and h > (s - t - 1) / 2)),
        implies(s - 0.5 == h < t + 0.5, s > 0.5 and s > (t + 2) / 3),
        implies(t + 0.5 <= h == s - 0.5, s > 0.5 and s > -t),
        implies(s - 0.5 < h < t + 0.5, h > s / 2 - 0.25 and h > (t - s + 1) / 2 and h > (s + t) / 4),
        implies(s - 0.5 < h and t + 0.5 <= h, h > s / 2 - 0.25 and h > (s - t - 1) / 2 and s + t > 0),
    ])


def k2p_oracle(s, t, h):
    return all([
        implies(h <= s - 0.5 and h < t, h > t / 2 - 0.25 and h > (s + t) / 4),
        implies(s - 0.5 <= h <= t, h > t / 2 - 0.25 and h > (t - s + 1) / 2),
        implies(t < h < s - 0.5 and h < t + 0.5,
                (h > t / 2 - 0.25 and h > (s - t) / 2 and h > (s + t) / 4)
                or (h > t / 2 + 0.25 and h > (s + t) / 4)),
        implies(s - 0.5 <= h and t < h < t + 0.5,
                (h > t / 2 - 0.25 and h > (t - s + 1) / 2 and s + t > 1)
                or (h > t / 2 + 0.25 and h > (t - s + 1) / 2)),
        implies(t + 0.5 == h < s - 0.5, t > -0.5 and t > (s - 2) / 3),
        implies(s - 0.5 <= h == t + 0.5, t > -0.5 and t > -s),
        implies(t + 0.5 < h < s - 0.5, h > t / 2 + 0.25 and h > (s - t - 1) / 2 and h > (s + t) / 4),
        implies(s - 0.5 <= h and t + 0.5 < h, h > t / 2 + 0.25 and h > (t - s + 1) / 2 and s + t > 0),
    ])


def s1_oracle(a, b, g, d):
    return all([
        implies(g >= 0 and d > -1, a + g < 0 and a + b + g + d + 1 < 0),
        implies(g >= 0 and d <= -1, a + g < 0 and a + b + g < 0),
        implies(g < 0 and d > -1, a + g < 0 and a + b + d + 1 < 0 and a + b + g + d + 1 < 0),
        implies(g < 0 and d <= -1, a + b < 0 and a + g < 0 and a + b + g < 0),
    ])


def s2_oracle(a, b, g, d):
    return all([
        implies(g >= 0 and d > -0.5, a + g < 0 and a + b + g + d + 1 < 0),
        implies(g >= 0 and d <= -0.5, a + g < 0 and a + b + g + 0.5 < 0),
        implies(-0.5 < g < 0 and d > -0.5,
                (a + g < 0 and a + b + d + 1 < 0 and a + b + g + d + 1 < 0)
                or (a + g + 0.5 < 0 and a + b + g + d + 1 < 0)),
        implies(-0.5 < g < 0 and d <= -0.5,
                (a + g < 0 and a + b + 0.5 < 0 and a + b + g + 0.5 < 0)
                or (a + g + 0.5 < 0 and a + b + g + 0.5 < 0)),
        implies(g == -0.5 and d > -0.5, a < 0 and a + b + d + 0.5 < 0),
        implies(g == -0.5 and d <= -0.5, a < 0 and a + b < 0),
        implies(g < -0.5 and d > -0.5, a + g + 0.5 < 0 and a + b + d + 0.5 < 0 and a + b + g + d + 1 < 0),
        implies(g < -0.5 and d <= -0.5, a + g + 0.5 < 0 and a + b < 0 and a + b + g + 0.5 < 0),
    ])


ORACLES = {
    RegionId.J1: (j1_oracle, [(-1.0, 3.0), (-1.5, 2.0)]),
    RegionId.J2: (j2_oracle, [(-1.0, 3.0), (-1.5, 2.0)]),
    RegionId.K1: (k1_oracle, [(-1.0, 3.0), (-1.5, 2.5), (-1.0, 3.0)]),
    RegionId.K1p: (k1p_oracle, [(-1.0, 3.0), (-1.5, 2.5), (-1.0, 3.0)]),
    RegionId.K2: (k2_oracle, [(-1.0, 3.0), (-1.5, 2.5), (-1.0, 3.0)]),
    RegionId.K2p: (k2p_oracle, [(-1.0, 3.0), (-1.5, 2.5), (-1.0, 3.0)]),
    RegionId.S1: (s1_oracle, [(-3.0, 1.0), (-2.0, 1.0), (-2.0, 1.5), (-2.0, 1.5)]),
    RegionId.S2: (s2_oracle, [(-3.0, 1.0), (-2.0, 1.0), (-2.0, 1.5), (-2.0, 1.5)]),
}


def test_region_examples():
    assert region_member("S1", (-2.0, 0.0, 0.0, 0.0)), "gamma >= 0, delta > -1 clause holds"
    assert not region_member("S1", (0.0, 0.0, 0.0, 0.0)), "alpha+gamma = 0 is not < 0"
    assert region_member(RegionId.J1, (0.5, 0.4))
    assert j1_sufficient(0.5, 0.4)


def test_region_arity_and_name_errors():
    with pytest.raises(DomainError):
        region_member("J1", (0.5, 0.4, 0.1))
    with pytest.raises(DomainError):
        region_member("S2", (0.0,))
    with pytest.raises(DomainError):
        region_member("J3", (0.5, 0.4))


@pytest.mark.parametrize("region", list(RegionId), ids=lambda r: r.value)
def test_clause_table_matches_oracle_on_random_points(region):
    oracle, box = ORACLES[region]
    rng = np.random.default_rng(17)
    lows = np.array([lo for lo, _ in box])
    highs = np.array([hi for _, hi in box])
    points = lows + (highs - lows) * rng.random((200, len(box)))
    members = 0
    for point in points:
        point = tuple(float(x) for x in point)
        expected = oracle(*point)
        assert region_member(region, point) == expected, f"{region.value} disagrees at {point}"
        members += expected
    assert 0 < members < 200, f"{region.value} sample should contain members and non-members"


@pytest.mark.parametrize("region", list(RegionId), ids=lambda r: r.value)
def test_clause_table_matches_oracle_on_quarter_grid(region):
    # Quarter steps land on clause boundaries and on the equality clauses
    oracle, box = ORACLES[region]
    values = np.arange(-1.5, 2.01, 0.25)
    rng = np.random.default_rng(5)
    for _ in range(400):
        point = tuple(float(x) for x in rng.choice(values, size=len(box)))
        assert region_member(region, point) == oracle(*point), f"{region.value} disagrees at {point}"


def test_j1_sufficient_region_on_grid():
    inside = 0
    for sigma in np.linspace(-0.5, 3.0, 50):
        for tau in np.linspace(-1.5, 2.0, 50):
            if j1_sufficient(sigma, tau):
                inside += 1
                assert region_member("J1", (sigma, tau)), f"J1 should contain ({sigma}, {tau})"
    assert inside > 0


def test_j1_sufficient_region_empty_outside_its_sigma_range():
    taus = np.linspace(-3.0, 4.0, 2001)
    for sigma in (-1.0, -0.5, -0.17, 2.5, 2.7, 4.0):
        assert not any(j1_sufficient(sigma, t) for t in taus), f"sigma={sigma} should admit no tau"
    for sigma in (-0.1, 0.0, 1.0, 2.0, 2.4):
        assert any(j1_sufficient(sigma, t) for t in taus), f"sigma={sigma} should admit some tau"
    assert j1_sufficient(2.0, 1.1)


def test_k1_sufficient_implies_both_regions():
    grid = np.linspace(-1.0, 3.0, 17)
    hits = 0
    for sigma in grid:
        for tau in grid:
            for theta in grid:
                if k1_sufficient(sigma, tau, theta):
                    hits += 1
                    point = (sigma, tau, theta)
                    assert region_member("K1", point) and region_member("K1p", point), point
    assert hits > 0


def test_s1_sufficient_implies_s1():
    rng = np.random.default_rng(3)
    for point in rng.uniform(-3.0, 1.0, size=(500, 4)):
        if s1_sufficient(*point):
            assert region_member("S1", tuple(point))


def test_exponent_lemma():
    assert exponent_lemma_holds(-1.0, -1.0, -1.0)
    assert exponent_lemma_holds(-1.0, 0.5, 0.2)
    assert not exponent_lemma_holds(0.0, -1.0, 0.5)
    assert not exponent_lemma_holds(-0.5, 0.5, 0.0)


def test_j1_agrees_with_s1_through_the_exponent_mapping():
    rng = np.random.default_rng(11)
    for sigma, tau in rng.uniform([-1.0, -1.5], [3.0, 2.0], size=(300, 2)):
        (point,) = s_point_for_case("b", sigma, tau, tau)
        assert region_member("J1", (sigma, tau)) == region_member("S1", tuple(point)), (sigma, tau)


def test_s_point_for_case_d_returns_the_swap():
    first, second = s_point_for_case("d", 1.0, 0.5, 0.2)
    assert first == pytest.approx((-0.25, -0.5, -0.2, 0.3))
    assert tuple(second) == (first.beta, first.alpha, first.delta, first.gamma)
    with pytest.raises(DomainError):
        s_point_for_case("a", 1.0, 0.5, 1.0)


def test_theorem_hypotheses_examples():
    report = theorem_V_hypotheses(1.0, 1.0, 1.0, 0.5)
    assert report.ok and report.case == "vacuous"

    report = theorem_V_hypotheses(0.0, 0.4, 0.0, 0.4)
    assert report.ok and report.case == "a"

    report = theorem_V_hypotheses(0.0, 0.6, 0.0, 0.4)
    assert not report.ok and report.case == "a"
    assert report.violated == ["(a) sigma-1 < tau < sigma+1, 2 sigma+1/2"]


def test_theorem_hypotheses_other_cases():
    assert theorem_V_hypotheses(0.5, 0.4, 0.4, 0.5).case == "b"
    assert theorem_V_hypotheses(0.5, 0.4, 0.4, 0.5).ok

    report = theorem_V_hypotheses(2.0, 0.0, 1.0, 0.5)
    assert report.case == "c" and report.ok
    report = theorem_V_hypotheses(1.5, 0.1, 1.1, 0.5)
    assert report.case == "c" and not report.ok

    report = theorem_V_hypotheses(1.0, 0.5, 1.2, 0.5)
    assert report.case == "d" and report.ok, report.violated

    # sigma - theta = -1 removes case (d)
    assert theorem_V_hypotheses(0.5, 0.3, 1.5, 0.5).case == "vacuous"


def test_standing_hypotheses_are_reported():
    report = theorem_V_hypotheses(-0.1, 1.0, 1.0, 0.5)
    assert not report.ok
    assert "sigma > u-1/2" in report.violated
    assert report.margins["sigma > u-1/2"] == pytest.approx(-0.1)


def test_require_raises_with_violated_clauses():
    with pytest.raises(HypothesisError) as info:
        require_theorem_V(0.0, 0.6, 0.0, 0.4)
    assert info.value.violated == ["(a) sigma-1 < tau < sigma+1, 2 sigma+1/2"]


def test_verdict_margins_and_json():
    verdict = region_verdict("J1", (0.5, 0.4))
    assert verdict.member
    assert verdict.margin == pytest.approx(0.1)
    assert verdict.violated == []
    data = json.loads(json.dumps(verdict.to_json()))
    assert data["region"] == "J1" and len(data["clauses"]) == 4

    outside = region_verdict("J1", (0.5, 0.6))
    assert not outside.member and outside.margin < 0
    assert outside.violated == ["1/2, sigma <= tau => tau < sigma/2+1/4, sigma+1"]
