import json

import numpy as np
import pytest

from dunkl_spectra import OperatorKind, OperatorSpec, witten_build
from dunkl_spectra.cli import verify_all
from dunkl_spectra.spectra import solve, witten_spectrum

FAST = [1, 4, 5, 6, 7, 11, 13]
SLOW = [2, 3, 8, 9, 10, 12]


@pytest.mark.parametrize("number", FAST)
def test_acceptance_criterion(number):
    summary = verify_all(only=[number])
    result = summary.results[0]
    assert result.number == number
    assert result.ok, json.dumps(result.details, default=str)


@pytest.mark.slow
@pytest.mark.parametrize("number", SLOW)
def test_acceptance_criterion_full_scale(number):
    result = verify_all(only=[number], debug=True).results[0]
    assert result.ok, json.dumps(result.details, default=str)
    print(f"\n✓ criterion {number} ({result.title}) in {result.seconds:.1f}s")


def test_P_and_Q_split_the_full_line_spectrum():
    full = solve(OperatorSpec(OperatorKind.U, sigma=1.0, u=0.5, xi=1.0, N=48))
    even = solve(OperatorSpec(OperatorKind.P, c1=1.0, a=0.0, u=0.5, xi=1.0, N=48))
    odd = solve(OperatorSpec(OperatorKind.Q, d1=1.0, b=0.0, u=0.5, xi=1.0, N=48))
    np.testing.assert_allclose(even.eigenvalues, full.group("even"), rtol=1e-10)
    np.testing.assert_allclose(odd.eigenvalues, full.group("odd"), rtol=1e-10)


def test_scale_enters_as_a_power():
    # J scales like s and the perturbation like xi s^u
    base = solve(OperatorSpec(OperatorKind.U, sigma=1.0, u=0.5, xi=1.0, s=1.0, N=32)).eigenvalues
    double = solve(OperatorSpec(OperatorKind.U, sigma=1.0, u=0.5, xi=np.sqrt(2.0), s=2.0, N=32)).eigenvalues
    np.testing.assert_allclose(double, 2.0 * base, rtol=1e-11)


def test_witten_components_are_nonnegative():
    model = witten_build(1.0, 0.5, mu=0.5)
    spectra = witten_spectrum(model, 32)
    assert spectra
    for label, result in spectra.items():
        assert result.eigenvalues[0] >= -1e-8, f"{label}: lowest Ritz value {result.eigenvalues[0]}"
